"""Exponentials of the Heisenberg modes and the symplectic-fermion fields on
the highest-weight space.

All series here are in ``u = z^2``.  With

    V^-(z) = exp(-sum_{n>0} h_n u^-n / n),   V^+(z) = exp(sum_{n>0} h_{-n} u^n / n),

the two odd fields are

    H^beta(u)  = V^+(z)^-1 beta(u)  u^(-h_0) V^-(z)^-1 = sum_n H^beta_(n)  u^(-n-1)
    H^gamma(u) = V^+(z)    gamma(u) u^(h_0)  V^-(z)    = sum_n H^gamma_(n) u^(-n-1)

A mode coefficient is computed exactly by enumerating the finitely many ways
of splitting the target exponent between the four factors.  The annihilation
exponential terminates on any vector; only finitely many creation terms can
reach a fixed exponent because the beta/gamma mode index is bounded once the
other exponents are fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal, Mapping

from gmpy2 import mpq

from .core import FockVector, Monomial, add_into, charge, degree
from .hwv import is_hwv
from .operators import beta_mode, gamma_mode, heisenberg_mode

Direction = Literal["annihilation", "creation"]


# ---------------------------------------------------------------------------
# exponentials of Heisenberg modes


@lru_cache(maxsize=None)
def _exp_on_monomial(sign: int, creation: bool, k: int, m: Monomial) -> dict:
    """Coefficient of ``u^(+-k)`` of ``exp(sign sum_n h_(-+n) u^(+-n) / n)`` on ``m``.

    Uses ``k P_k = sign sum_{n=1}^k h_(-+n) P_(k-n)``, valid because the
    ``h_n`` of one sign commute.
    """
    if k == 0:
        return {m: mpq(1)}
    if not creation and 4 * k > degree(m):
        return {}
    acc: dict = {}
    scale = mpq(sign, k)
    for n in range(1, k + 1):
        prev = FockVector._wrap(_exp_on_monomial(sign, creation, k - n, m))
        if not prev:
            continue
        add_into(acc, heisenberg_mode(-n if creation else n, prev)._terms, scale)
    return acc


def exp_coefficient(sign: int, creation: bool, k: int, v: FockVector) -> FockVector:
    acc: dict = {}
    for m, c in v.items():
        add_into(acc, _exp_on_monomial(sign, creation, k, m), c)
    return FockVector._wrap(acc)


def _exp_sign(direction: Direction, inverted: bool) -> tuple[int, bool]:
    if direction == "annihilation":
        return (1 if inverted else -1), False
    if direction == "creation":
        return (-1 if inverted else 1), True
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class LaurentFamily:
    """Coefficients of a series in ``u = z^2``, exact within ``window``.

    Every exponent below ``lower_bound`` is known to vanish.
    """

    terms: Mapping[int, FockVector]
    lower_bound: int
    window: tuple[int, int]

    def __getitem__(self, e: int) -> FockVector:
        lo, hi = self.window
        if e < self.lower_bound:
            return FockVector()
        if not lo <= e <= hi:
            raise KeyError(f"exponent {e} lies outside the computed window {self.window}")
        return self.terms.get(e, FockVector())

    def exponents(self) -> list[int]:
        return sorted(self.terms)


def exp_heisenberg_apply(direction: Direction, inverted: bool, v: FockVector, window: tuple[int, int]) -> LaurentFamily:
    """Apply ``V^-(z)^(+-1)`` (annihilation) or ``V^+(z)^(+-1)`` (creation) to ``v``.

    The annihilation direction is a Laurent polynomial in ``u^-1``; the
    creation direction is returned on the exponents of ``window``.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window")
    sign, creation = _exp_sign(direction, inverted)
    terms = {}
    if creation:
        for e in range(max(lo, 0), hi + 1):
            c = exp_coefficient(sign, True, e, v)
            if c:
                terms[e] = c
        return LaurentFamily(terms, 0, window)
    bottom = -(v.max_degree() // 4)
    for e in range(max(lo, bottom), min(hi, 0) + 1):
        c = exp_coefficient(sign, False, -e, v)
        if c:
            terms[e] = c
    return LaurentFamily(terms, bottom, window)


# ---------------------------------------------------------------------------
# the odd fields


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def hbeta_mode(n: int, v: FockVector) -> FockVector:
    """``H^beta_(n) v``, the coefficient of ``u^(-n-1)`` in ``H^beta(u) v``.

    For homogeneous ``v`` of charge c the result has doubled degree
    ``deg2(v) + 4c - 4n - 1`` and charge ``c - 1``.
    """
    acc: dict = {}
    for c, block in v.components(charge).items():
        top = block.max_degree()
        for k in range(top // 4 + 1):
            w = exp_coefficient(1, False, k, block)
            if not w:
                continue
            # beta_m = chi_{1-4m (doubled)} annihilates w once 1 - 4m > deg2(w)
            m_lo = _ceil_div(1 - w.max_degree(), 4)
            for m in range(m_lo, k + c - n + 1):
                x = beta_mode(m, w)
                if x:
                    add_into(acc, exp_coefficient(-1, True, k + c - n - m, x)._terms)
    return FockVector._wrap(acc)


def hgamma_mode(n: int, v: FockVector) -> FockVector:
    """``H^gamma_(n) v``, the coefficient of ``u^(-n-1)`` in ``H^gamma(u) v``.

    For homogeneous ``v`` of charge c the result has doubled degree
    ``deg2(v) - 4c - 4n - 3`` and charge ``c + 1``.
    """
    acc: dict = {}
    for c, block in v.components(charge).items():
        top = block.max_degree()
        for k in range(top // 4 + 1):
            w = exp_coefficient(-1, False, k, block)
            if not w:
                continue
            # gamma_m = chi_{-4m-1 (doubled)} annihilates w once -4m - 1 > deg2(w)
            m_lo = _ceil_div(-1 - w.max_degree(), 4)
            for m in range(m_lo, k - c - n):
                x = gamma_mode(m, w)
                if x:
                    add_into(acc, exp_coefficient(1, True, k - c - n - 1 - m, x)._terms)
    return FockVector._wrap(acc)


def _blocks(v: FockVector) -> dict:
    return v.components(lambda m: (degree(m), charge(m)))


def hbeta_top_mode(d2: int, c: int) -> int:
    """Largest n with ``H^beta_(n)`` possibly nonzero on degree ``d2``, charge ``c`` vectors."""
    return (d2 + 4 * c - 1) // 4


def hgamma_top_mode(d2: int, c: int) -> int:
    return (d2 - 4 * c - 3) // 4


def hwv_virasoro_mode(n: int, v: FockVector, check: bool = True) -> FockVector:
    """``L^hwv_n v = sum_{k+l=n} :H^gamma_(k) H^beta_(l): v`` on highest weight vectors.

    Fermionic normal ordering: ``H^gamma_(k) H^beta_(l)`` for ``k < 0`` and
    ``-H^beta_(l) H^gamma_(k)`` for ``k >= 0``.  Vectors outside the hwv
    space are refused.
    """
    if not v:
        return FockVector()
    if check and not is_hwv(v):
        raise ValueError("L^hwv is only defined on highest weight vectors")
    acc: dict = {}
    for (d2, c), block in _blocks(v).items():
        # k < 0 needs H^beta_(n-k) block != 0, i.e. n - k <= hbeta_top_mode
        for k in range(n - hbeta_top_mode(d2, c), 0):
            add_into(acc, hgamma_mode(k, hbeta_mode(n - k, block))._terms)
        for k in range(0, hgamma_top_mode(d2, c) + 1):
            add_into(acc, hbeta_mode(n - k, hgamma_mode(k, block))._terms, -1)
    return FockVector._wrap(acc)


def translation(v: FockVector) -> FockVector:
    """``T = L^hwv_{-1}``."""
    return hwv_virasoro_mode(-1, v)


def anticommutator(op_a: Callable, op_b: Callable, v: FockVector) -> FockVector:
    return op_a(op_b(v)) + op_b(op_a(v))


# ---------------------------------------------------------------------------
# exchange relations between the exponentials


@dataclass(frozen=True)
class ExchangeRelation:
    """``A(z) B(w) = f(u, t) B(w) A(z)`` with ``A`` an annihilation and ``B`` a
    creation exponential; ``kernel`` maps p to the coefficient of ``(t/u)^p``."""

    name: str
    ann_sign: int
    cre_sign: int
    kernel: Mapping[int, int] | None = None  # None: geometric series sum_p (t/u)^p

    def factor(self, p: int) -> int:
        if self.kernel is None:
            return 1
        return self.kernel.get(p, 0)


EXCHANGE_RELATIONS = (
    ExchangeRelation("V-(z) V+(w) = z^2/(z^2-w^2) V+(w) V-(z)", -1, 1),
    ExchangeRelation("V-(z)^-1 V+(w)^-1 = z^2/(z^2-w^2) V+(w)^-1 V-(z)^-1", 1, -1),
    ExchangeRelation("V-(z)^-1 V+(w) = (z^2-w^2)/z^2 V+(w) V-(z)^-1", 1, 1, {0: 1, 1: -1}),
    ExchangeRelation("V-(z) V+(w)^-1 = (z^2-w^2)/z^2 V+(w)^-1 V-(z)", -1, -1, {0: 1, 1: -1}),
)


def check_exchange(rel: ExchangeRelation, v: FockVector, max_power: int) -> tuple[bool, tuple | None]:
    """Compare coefficients of ``t^J u^-K`` on both sides for ``J <= max_power``.

    Returns ``(passed, first failing (J, K))``.
    """
    top = v.max_degree()
    for J in range(max_power + 1):
        created = exp_coefficient(rel.cre_sign, True, J, v)
        for K in range((top + 4 * J) // 4 + 1):
            lhs = exp_coefficient(rel.ann_sign, False, K, created)
            rhs: dict = {}
            for p in range(min(J, K) + 1):
                f = rel.factor(p)
                if f:
                    inner = exp_coefficient(rel.ann_sign, False, K - p, v)
                    add_into(rhs, exp_coefficient(rel.cre_sign, True, J - p, inner)._terms, f)
            if lhs != FockVector._wrap(rhs):
                return False, (J, K)
    return True, None
