"""The bosonized realization on ``C[e^alpha, e^-alpha] (x) C[x_1, x_2, ...; y_1, y_2, ...]``.

With ``X_n = x_n + i y_n`` and ``D_n = d/dx_n + i d/dy_n`` the two fields are

    beta(u)  = exp(i sum X_n u^n) exp(-i sum D_n u^-n / n) e^-alpha
    gamma(u) = :exp(-i sum X_n u^n) h^y(u) exp(i sum D_n u^-n / n) e^alpha:

and ``chi(z) = gamma(z^2) + z beta(z^2)``.  Inside the normal ordering the
creation half ``sum n y_n u^(n-1)`` of ``h^y`` stands left of the annihilation
exponential, while the annihilation half ``sum d/dy_n u^(-n-1) + h^y_0 u^-1``
acts first, so ``h^y_0`` reads the lattice charge before the shift by
``e^alpha``.  Mode ``k`` of beta sits at ``u^(k-1)``, mode ``k`` of gamma at
``u^k``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping, NamedTuple

from gmpy2 import mpq

from .core import FockVector, Monomial, SparseVector, add_into, parse_half
from .linalg import rank

_RATIONAL = (int, type(mpq()), Fraction, Rational)

# ---------------------------------------------------------------------------
# scalars


class GaussianRational:
    """Exact ``re + i im`` with rational parts (stored as ``gmpy2.mpq`` for speed)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + mpq(im)
        self.re = mpq(re)
        self.im = mpq(im)

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj.re, obj.im = re, im
        return obj

    def __add__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL):
            return GaussianRational._make(self.re + other, self.im) if other else self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is GaussianRational or isinstance(other, _RATIONAL):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if type(other) is GaussianRational:
            if not other.im:
                return GaussianRational._make(self.re * other.re, self.im * other.re)
            if not self.im:
                return GaussianRational._make(self.re * other.re, self.re * other.im)
            return GaussianRational._make(
                self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re
            )
        if isinstance(other, _RATIONAL):
            if other == 1:
                return self
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL):
            other = GaussianRational(other)
        if type(other) is not GaussianRational:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        return GaussianRational._make(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL):
            return GaussianRational(other) / self
        return NotImplemented

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]


I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# basis monomials and states

Parts = tuple[tuple[int, int], ...]


def _bump(parts: Parts, n: int, delta: int) -> Parts:
    d = dict(parts)
    e = d.get(n, 0) + delta
    if e:
        d[n] = e
    else:
        d.pop(n, None)
    return tuple(sorted(d.items()))


def _merge(a: Parts, b: Parts) -> Parts:
    if not b:
        return a
    if not a:
        return b
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


class PolyMonomial(NamedTuple):
    """``e^(lattice alpha) prod x_n^a_n prod y_n^b_n``; parts are sorted ``(n, exponent)`` pairs."""

    lattice: int = 0
    xparts: Parts = ()
    yparts: Parts = ()

    @classmethod
    def of(cls, lattice: int = 0, x: Mapping[int, int] | None = None, y: Mapping[int, int] | None = None) -> "PolyMonomial":
        def norm(parts):
            items = sorted((int(n), int(e)) for n, e in (parts or {}).items() if e)
            if any(n < 1 or e < 0 for n, e in items):
                raise ValueError("variables are indexed from 1 and exponents are positive")
            return tuple(items)

        return cls(int(lattice), norm(x), norm(y))

    @property
    def weight(self) -> int:
        return sum(n * e for n, e in self.xparts) + sum(n * e for n, e in self.yparts)

    def exponent(self, var: str, n: int) -> int:
        return dict(self.xparts if var == "x" else self.yparts).get(n, 0)

    def times(self, var: str, n: int, power: int = 1) -> "PolyMonomial":
        if var == "x":
            return PolyMonomial(self.lattice, _bump(self.xparts, n, power), self.yparts)
        return PolyMonomial(self.lattice, self.xparts, _bump(self.yparts, n, power))

    def shifted(self, delta: int) -> "PolyMonomial":
        return PolyMonomial(self.lattice + delta, self.xparts, self.yparts)

    def product(self, other: "PolyMonomial") -> "PolyMonomial":
        return PolyMonomial(self.lattice + other.lattice, _merge(self.xparts, other.xparts), _merge(self.yparts, other.yparts))

    def __str__(self) -> str:
        factors = [f"e^{self.lattice}a"] if self.lattice else []
        for var, parts in (("x", self.xparts), ("y", self.yparts)):
            factors += [f"{var}{n}" + (f"^{e}" if e > 1 else "") for n, e in parts]
        return "*".join(factors) or "1"

    def to_json(self) -> list:
        return [self.lattice, [list(p) for p in self.xparts], [list(p) for p in self.yparts]]

    @classmethod
    def from_json(cls, data: list) -> "PolyMonomial":
        lattice, xs, ys = data
        return cls.of(lattice, dict(map(tuple, xs)), dict(map(tuple, ys)))


ONE = PolyMonomial()


class PolyState(SparseVector):
    """Finite combination of :class:`PolyMonomial` with Gaussian-rational coefficients."""

    __slots__ = ()

    def __init__(self, terms: Mapping[PolyMonomial, Any] | None = None):
        super().__init__({m: GaussianRational(c) for m, c in (terms or {}).items()})

    @classmethod
    def one(cls) -> "PolyState":
        return cls({ONE: 1})

    @classmethod
    def basis(cls, m: PolyMonomial, coeff: Any = 1) -> "PolyState":
        return cls({m: coeff})

    def lattice_charges(self) -> set[int]:
        return {m.lattice for m in self._terms}

    def max_weight(self) -> int:
        return max((m.weight for m in self._terms), default=0)

    def to_json(self) -> list:
        return [[c.to_json(), m.to_json()] for m, c in sorted(self.items(), key=lambda kv: kv[0])]

    def __repr__(self) -> str:
        if not self._terms:
            return "PolyState(0)"
        body = " + ".join(f"({c})*{m}" for m, c in sorted(self.items(), key=lambda kv: kv[0]))
        return f"PolyState({body})"


def _apply(fn: Callable[..., Mapping], s: PolyState, *key) -> PolyState:
    acc: dict = {}
    for m, c in s.items():
        add_into(acc, fn(*key, m), c)
    return PolyState._wrap(acc)


def _times_poly(poly: Mapping[PolyMonomial, Any], terms: Mapping[PolyMonomial, Any]) -> dict:
    acc: dict = {}
    for p, a in poly.items():
        for m, b in terms.items():
            key = p.product(m)
            value = acc.get(key)
            acc[key] = a * b if value is None else value + a * b
    return {k: c for k, c in acc.items() if c}


# ---------------------------------------------------------------------------
# elementary operators


def _diff(var: str, n: int, m: PolyMonomial) -> dict:
    e = m.exponent(var, n)
    return {m.times(var, n, -1): GaussianRational(e)} if e else {}


def _d_complex(n: int, m: PolyMonomial) -> dict:
    """``D_n = d/dx_n + i d/dy_n``."""
    acc = dict(_diff("x", n, m))
    add_into(acc, _diff("y", n, m), I)
    return acc


def _x_complex(n: int) -> dict:
    """``X_n = x_n + i y_n`` as a polynomial."""
    return {ONE.times("x", n): GaussianRational(1), ONE.times("y", n): I}


def hy_mode(n: int, s: PolyState) -> PolyState:
    """Mode of ``h^y(z) = sum d/dy_n z^(-n-1) + h^y_0 z^-1 + sum n y_n z^(n-1)``."""
    if n > 0:
        return _apply(lambda m: _diff("y", n, m), s)
    if n < 0:
        return _apply(lambda m: {m.times("y", -n): GaussianRational(-n)}, s)
    return _apply(lambda m: {m: GaussianRational(m.lattice)}, s)


def hx_mode(n: int, s: PolyState) -> PolyState:
    """Heisenberg mode ``h_n`` transported to the x variables: ``i d/dx_n``, ``i n x_n``, lattice charge."""
    if n > 0:
        return _apply(lambda m: {k: I * c for k, c in _diff("x", n, m).items()}, s)
    if n < 0:
        return _apply(lambda m: {m.times("x", -n): I * (-n)}, s)
    return _apply(lambda m: {m: GaussianRational(m.lattice)}, s)


@lru_cache(maxsize=None)
def _creation_poly(sign: int, j: int) -> dict:
    """Coefficient of ``u^j`` in ``exp(sign i sum X_n u^n)``, via ``j Q_j = sign i sum n X_n Q_(j-n)``."""
    if j == 0:
        return {ONE: GaussianRational(1)}
    acc: dict = {}
    for n in range(1, j + 1):
        add_into(acc, _times_poly(_x_complex(n), _creation_poly(sign, j - n)), I * mpq(sign * n, j))
    return acc


@lru_cache(maxsize=None)
def _annihilation_on(sign: int, j: int, m: PolyMonomial) -> dict:
    """Coefficient of ``u^-j`` in ``exp(sign i sum D_n u^-n / n)`` applied to ``m``."""
    if j == 0:
        return {m: GaussianRational(1)}
    if j > m.weight:
        return {}
    acc: dict = {}
    for n in range(1, j + 1):
        for p, c in _annihilation_on(sign, j - n, m).items():
            add_into(acc, _d_complex(n, p), c * I * mpq(sign, j))
    return acc


def _creation_terms(sign: int, pending: Mapping[int, dict]) -> dict:
    acc: dict = {}
    for i in sorted(pending):
        if pending[i]:
            add_into(acc, _times_poly(_creation_poly(sign, i), pending[i]))
    return acc


@lru_cache(maxsize=None)
def _beta_on(k: int, m: PolyMonomial) -> dict:
    # u^(k-1) = u^i (creation) * u^-j (annihilation)
    shifted = m.shifted(-1)
    pending: dict[int, dict] = {}
    for j in range(max(0, 1 - k), m.weight + 1):
        lowered = _annihilation_on(-1, j, shifted)
        if lowered:
            add_into(pending.setdefault(k - 1 + j, {}), lowered)
    return _creation_terms(1, pending)


@lru_cache(maxsize=None)
def _gamma_on(k: int, m: PolyMonomial) -> dict:
    pending: dict[int, dict] = {}
    shifted = m.shifted(1)
    # creation half of h^y: n y_n u^(n-1), left of the annihilation exponential
    for j in range(m.weight + 1):
        lowered = _annihilation_on(1, j, shifted)
        if not lowered:
            continue
        for n in range(1, k + j + 2):
            add_into(pending.setdefault(k - n + 1 + j, {}), {p.times("y", n): c * n for p, c in lowered.items()})
    # annihilation half of h^y, acting before the lattice shift
    pieces: list[tuple[int, dict]] = []
    if m.lattice:
        pieces.append((1, {m: GaussianRational(m.lattice)}))
    for n, _ in m.yparts:
        pieces.append((n + 1, _diff("y", n, m)))
    for p_exp, piece in pieces:
        for q, c in piece.items():
            q_shift = q.shifted(1)
            for j in range(q.weight + 1):
                i = k + j + p_exp
                if i < 0:
                    continue
                lowered = _annihilation_on(1, j, q_shift)
                if lowered:
                    add_into(pending.setdefault(i, {}), lowered, c)
    return _creation_terms(-1, pending)


def beta_bos_mode(k: int, s: PolyState) -> PolyState:
    """Coefficient of ``u^(k-1)`` in the bosonized ``beta(u)``; lowers the lattice charge by 1."""
    return _apply(_beta_on, s, int(k))


def gamma_bos_mode(k: int, s: PolyState) -> PolyState:
    """Coefficient of ``u^k`` in the bosonized ``gamma(u)``; raises the lattice charge by 1."""
    return _apply(_gamma_on, s, int(k))


def chi_bos_mode(a, s: PolyState) -> PolyState:
    """Bosonized ``chi_a``: ``chi_{-2k-1/2} -> gamma_k`` and ``chi_{-2k+1/2} -> beta_k``.

    ``a`` is a half-integer literal or an odd doubled index (``int``).
    """
    a2 = a if isinstance(a, int) else parse_half(a)
    if a2 % 2 == 0:
        raise ValueError(f"chi modes have half-odd indices, got doubled value {a2}")
    if a2 % 4 == 3:
        return gamma_bos_mode((-a2 - 1) // 4, s)
    return beta_bos_mode((1 - a2) // 4, s)


# ---------------------------------------------------------------------------
# the map from the fermionic Fock space


@lru_cache(maxsize=None)
def _intertwine_monomial(m: Monomial) -> PolyState:
    if not m:
        return PolyState.one()
    (a2, mult), rest = m[0], m[1:]
    inner = rest if mult == 1 else ((a2, mult - 1),) + rest
    return chi_bos_mode(a2, _intertwine_monomial(inner))


def intertwiner(v: FockVector) -> PolyState:
    """Linear map with ``|0> -> 1`` sending each creation mode to its bosonized counterpart."""
    acc: dict = {}
    for m, c in v.items():
        add_into(acc, _intertwine_monomial(m)._terms, c)
    return PolyState._wrap(acc)


def image_rank(vectors: Iterable[FockVector]) -> int:
    """Exact rank of the intertwiner images."""
    images = [intertwiner(v) for v in vectors]
    keys = sorted({k for s in images for k in s.keys()})
    return rank([[s.coefficient(k) for k in keys] for s in images], len(keys))


# ---------------------------------------------------------------------------
# the bosonized Hirota residue


class PolyTensor(SparseVector):
    """Element of the tensor square of the bosonic space, keyed by monomial pairs."""

    __slots__ = ()

    @classmethod
    def tensor(cls, s: PolyState, t: PolyState) -> "PolyTensor":
        return cls._wrap({(a, b): c1 * c2 for a, c1 in s.items() for b, c2 in t.items()})

    def swap(self) -> "PolyTensor":
        return type(self)._wrap({(b, a): c for (a, b), c in self.items()})

    def to_json(self) -> list:
        rows = sorted(self.items(), key=lambda kv: kv[0])
        return [[c.to_json(), a.to_json(), b.to_json()] for (a, b), c in rows]

    def __repr__(self) -> str:
        return f"PolyTensor({len(self)} terms)"


def hirota_residue_bos(s: PolyState, t: PolyState) -> PolyTensor:
    """``Res_u (beta(u) (x) gamma(u) - gamma(u) (x) beta(u))`` on ``s (x) t``.

    beta_m sits at ``u^(m-1)`` and gamma_n at ``u^n``, so the residue pairs
    ``n = -m``.  Outside ``1 - w <= m <= w + 1`` (w the larger weight) one
    factor of every term vanishes.
    """
    w = max(s.max_weight(), t.max_weight())
    acc: dict = {}
    for m in range(1 - w, w + 2):
        left, right = beta_bos_mode(m, s), gamma_bos_mode(-m, t)
        if left and right:
            add_into(acc, PolyTensor.tensor(left, right)._terms)
        left, right = gamma_bos_mode(-m, s), beta_bos_mode(m, t)
        if left and right:
            add_into(acc, PolyTensor.tensor(left, right)._terms, -1)
    return PolyTensor._wrap(acc)


def intertwine_tensor(tensor: SparseVector) -> PolyTensor:
    """Image of a Fock-space tensor under the intertwiner on both factors."""
    acc: dict = {}
    for (a, b), c in tensor.items():
        add_into(acc, PolyTensor.tensor(_intertwine_monomial(a), _intertwine_monomial(b))._terms, c)
    return PolyTensor._wrap(acc)


# ---------------------------------------------------------------------------
# finite blocks


def _two_colour_partitions(w: int, bound: tuple[int, str]) -> Iterator[list[tuple[int, str]]]:
    """Multisets of coloured parts ``(n, var)`` summing to ``w``, listed non-increasingly."""
    if w == 0:
        yield []
        return
    for n in range(min(w, bound[0]), 0, -1):
        for var in ("y", "x"):
            if (n, var) > bound:
                continue
            for rest in _two_colour_partitions(w - n, (n, var)):
                yield [(n, var)] + rest


def monomials_of_weight(w: int, lattice: int = 0) -> list[PolyMonomial]:
    """All monomials of total variable weight ``w`` and the given lattice charge."""
    if w < 0:
        raise ValueError("weight must be nonnegative")
    monos = []
    for parts in _two_colour_partitions(w, (w, "y")):
        m = PolyMonomial(lattice)
        for n, var in parts:
            m = m.times(var, n)
        monos.append(m)
    return sorted(monos)


def block_basis(max_weight: int, lattices: Iterable[int]) -> list[PolyMonomial]:
    return [m for c in lattices for w in range(max_weight + 1) for m in monomials_of_weight(w, c)]

