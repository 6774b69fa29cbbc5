"""Quadratic operators built from chi-modes.

Every operator here is a sum ``sum_{a+b=s} c(a, b) :chi_a chi_b:``.  On a
fixed monomial only finitely many pairs act nontrivially: an annihilating
member ``chi_p`` (``p > 0``) must find ``chi_{-p}`` in the monomial, so the
candidates are the pairs whose positive members are indices present in the
monomial, plus the pairs with both members negative.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from gmpy2 import mpq

from .core import (
    FockVector,
    Monomial,
    SparseVector,
    add_into,
    apply_mode,
    monomial_from_json,
    monomial_to_json,
    pair_on_monomial,
    sign_for,
)

HALF = mpq(1, 2)


def _candidate_firsts(m: Monomial, s2: int) -> list[int]:
    present = [-a2 for a2, _ in m]  # positive doubled indices that can annihilate
    firsts = set(present)
    firsts.update(s2 - p for p in present)
    if s2 < 0:
        firsts.update(range(s2 + 1, 0, 2))
    return sorted(a2 for a2 in firsts if a2 % 2)


def _bilinear_on_monomial(m: Monomial, s2: int, coeff: Callable[[int, int], mpq]) -> dict:
    acc: dict = {}
    for a2 in _candidate_firsts(m, s2):
        b2 = s2 - a2
        c = coeff(a2, b2)
        if c == 0:
            continue
        for target, k in pair_on_monomial(a2, b2, m):
            add_into(acc, {target: c * k})
    return acc


def _apply_cached(fn, v: FockVector, *key) -> FockVector:
    acc: dict = {}
    for m, c in v.items():
        add_into(acc, fn(*key, m), c)
    return FockVector._wrap(acc)


@lru_cache(maxsize=None)
def _heisenberg_on_monomial(n: int, m: Monomial) -> dict:
    return _bilinear_on_monomial(m, 4 * n, lambda a2, b2: HALF)


def heisenberg_mode(n: int, v: FockVector) -> FockVector:
    """Untwisted Heisenberg mode ``h_n = 1/2 sum_k :chi_k chi_{2n-k}:``.

    Lowers the degree by ``2n`` and preserves the charge.
    """
    return _apply_cached(_heisenberg_on_monomial, v, int(n))


def _twisted_coeff(a2: int, b2: int) -> mpq:
    # (-1)^(b + 1/2) from chi(-z)
    return HALF if ((b2 + 1) // 2) % 2 == 0 else -HALF


@lru_cache(maxsize=None)
def _twisted_on_monomial(n2: int, m: Monomial) -> dict:
    return _bilinear_on_monomial(m, 2 * n2, _twisted_coeff)


def twisted_heisenberg_mode(n2: int, v: FockVector) -> FockVector:
    """Twisted Heisenberg mode ``h^t_n`` of ``1/2 :chi(z) chi(-z):`` for half-odd ``n = n2/2``.

    ``h^t_n = 1/2 sum_{a+b=2n} (-1)^(b+1/2) :chi_a chi_b:``.
    """
    if n2 % 2 == 0:
        raise ValueError("twisted Heisenberg modes have half-odd indices")
    return _apply_cached(_twisted_on_monomial, v, int(n2))


@lru_cache(maxsize=None)
def _virasoro_on_monomial(lam: mpq, n: int, m: Monomial) -> dict:
    def coeff(a2: int, b2: int) -> mpq:
        if (a2 - 1) % 4:
            return mpq(0)
        k = (a2 - 1) // 4
        l = n - k
        return -(lam * (k + 1) + (lam + 1) * l)

    return _bilinear_on_monomial(m, 4 * n, coeff)


def virasoro_mode(lam, n: int, v: FockVector) -> FockVector:
    """Mode ``L^lambda_n`` (``mu = 0``) of the Virasoro family

        L_n = -sum_{k+l=n} (lambda (k+1) + (lambda+1) l) :chi_{2k+1/2} chi_{2l-1/2}:

    For ``lambda = -1/4``, ``L_0`` is half the degree.
    """
    return _apply_cached(_virasoro_on_monomial, v, mpq(lam), int(n))


def beta_mode(k: int, v: FockVector) -> FockVector:
    """``chi_{-2k+1/2}``: coefficient of ``(z^2)^(k-1)`` in ``beta(z^2)``."""
    return apply_mode(-4 * k + 1, v)


def gamma_mode(k: int, v: FockVector) -> FockVector:
    """``chi_{-2k-1/2}``: coefficient of ``(z^2)^k`` in ``gamma(z^2)``."""
    return apply_mode(-4 * k - 1, v)


def commutator(op_a, op_b, v):
    """``(AB - BA) v`` for two callables acting on vectors."""
    return op_a(op_b(v)) - op_b(op_a(v))


# ---------------------------------------------------------------------------
# tensor square and the Hirota residue


class TensorVector(SparseVector):
    """Element of ``F (x) F`` keyed by pairs of monomials."""

    __slots__ = ()

    @classmethod
    def tensor(cls, u: SparseVector, w: SparseVector) -> "TensorVector":
        acc: dict = {}
        for m1, c1 in u.items():
            for m2, c2 in w.items():
                acc[(m1, m2)] = c1 * c2
        return cls._wrap(acc)

    def swap(self) -> "TensorVector":
        return type(self)._wrap({(b, a): c for (a, b), c in self.items()})

    def to_json(self) -> list:
        rows = sorted(self.items(), key=lambda kv: kv[0])
        return [[str(c), monomial_to_json(a), monomial_to_json(b)] for (a, b), c in rows]

    @classmethod
    def from_json(cls, data: list) -> "TensorVector":
        acc: dict = {}
        for c, a, b in data:
            add_into(acc, {(monomial_from_json(a), monomial_from_json(b)): mpq(c)})
        return cls._wrap(acc)

    def __repr__(self) -> str:
        return f"TensorVector({len(self)} terms)"


def hirota_residue(u: FockVector, w: FockVector) -> TensorVector:
    """``S(u (x) w) = sum_m (-1)^(m-1/2) chi_m u (x) chi_{-m} w``.

    The sign comes from ``chi(-z) = sum_n chi_n (-1)^(n+1/2) z^(-n-1/2)``.
    Only ``-deg(w) <= m <= deg(u)`` can contribute.
    """
    acc: dict = {}
    for a2 in range(-w.max_degree() - 1, u.max_degree() + 2):
        if a2 % 2 == 0:
            continue
        left = apply_mode(a2, u)
        if not left:
            continue
        right = apply_mode(-a2, w)
        if not right:
            continue
        add_into(acc, TensorVector.tensor(left, right)._terms, sign_for(a2))
    return TensorVector._wrap(acc)
