"""Truncated q-series (exponents in (1/2)Z, stored doubled) and the character
and partition identities of the Heisenberg decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .core import charge, degree, format_half
from .hwv import graded_basis


def _prune(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


@dataclass(frozen=True)
class QSeries:
    """Series ``sum c_e q^(e/2)`` known exactly for ``0 <= e <= order``."""

    order: int  # doubled cutoff (inclusive)
    coeffs: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: c for e, c in sorted(self.coeffs.items()) if c and 0 <= e <= self.order})

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(order, {0: 1})

    def __getitem__(self, e: int) -> int:
        if e > self.order:
            raise IndexError(f"q^{format_half(e)} lies beyond the cutoff q^{format_half(self.order)}")
        return self.coeffs.get(e, 0)

    def coefficients(self) -> list[int]:
        """Dense list of coefficients for doubled exponents 0..order."""
        return [self.coeffs.get(e, 0) for e in range(self.order + 1)]

    def truncate(self, order: int) -> "QSeries":
        return QSeries(min(order, self.order), self.coeffs)

    def __add__(self, other: "QSeries") -> "QSeries":
        order = min(self.order, other.order)
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return QSeries(order, acc)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other * -1

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, int):
            return QSeries(self.order, {e: c * other for e, c in self.coeffs.items()})
        order = min(self.order, other.order)
        acc: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                if e1 + e2 > order:
                    break
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return QSeries(order, acc)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Reciprocal of a series with constant term +-1 (exact over Z)."""
        c0 = self.coeffs.get(0, 0)
        if c0 not in (1, -1):
            raise ValueError("only series with constant term +-1 are invertible over the integers")
        inv = [0] * (self.order + 1)
        inv[0] = c0
        terms = [(e, c) for e, c in self.coeffs.items() if e > 0]
        for n in range(1, self.order + 1):
            s = 0
            for e, c in terms:
                if e > n:
                    break
                s += c * inv[n - e]
            inv[n] = -s * c0
        return QSeries(self.order, dict(enumerate(inv)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and dict(self.coeffs) == dict(other.coeffs)

    def first_mismatch(self, other: "QSeries") -> tuple[int, int, int] | None:
        """``(doubled exponent, ours, theirs)`` of the first difference within the common cutoff."""
        for e in range(min(self.order, other.order) + 1):
            if self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return e, self.coeffs.get(e, 0), other.coeffs.get(e, 0)
        return None

    def to_json(self) -> dict:
        return {"order": format_half(self.order), "coefficients": {format_half(e): c for e, c in self.coeffs.items()}}


@dataclass(frozen=True)
class BivariateSeries:
    """Series in ``q^(1/2)`` whose coefficients are Laurent polynomials in ``z``.

    Only the q-direction is truncated; z stays exact.
    """

    order: int
    coeffs: Mapping[int, Mapping[int, int]]  # doubled q-exponent -> {z-exponent: c}

    def __post_init__(self):
        clean = {}
        for e in sorted(self.coeffs):
            if 0 <= e <= self.order:
                poly = _prune(self.coeffs[e])
                if poly:
                    clean[e] = dict(sorted(poly.items()))
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls(order, {0: {0: 1}})

    def __getitem__(self, e: int) -> dict[int, int]:
        if e > self.order:
            raise IndexError("beyond cutoff")
        return dict(self.coeffs.get(e, {}))

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        acc: dict[int, dict[int, int]] = {}
        for e1, p1 in self.coeffs.items():
            for e2, p2 in other.coeffs.items():
                if e1 + e2 > order:
                    break
                slot = acc.setdefault(e1 + e2, {})
                for z1, c1 in p1.items():
                    for z2, c2 in p2.items():
                        slot[z1 + z2] = slot.get(z1 + z2, 0) + c1 * c2
        return BivariateSeries(order, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def at_z_equal_one(self) -> QSeries:
        return QSeries(self.order, {e: sum(p.values()) for e, p in self.coeffs.items()})

    def first_mismatch(self, other: "BivariateSeries") -> tuple[int, dict, dict] | None:
        for e in range(min(self.order, other.order) + 1):
            a, b = self.coeffs.get(e, {}), other.coeffs.get(e, {})
            if a != b:
                return e, a, b
        return None

    def to_json(self) -> dict:
        return {
            "order": format_half(self.order),
            "coefficients": {format_half(e): {str(k): c for k, c in p.items()} for e, p in self.coeffs.items()},
        }


# ---------------------------------------------------------------------------
# product building blocks


def _geometric(order: int, step: int, z: int = 0) -> BivariateSeries:
    """``1 / (1 - z^z q^(step/2))`` truncated."""
    return BivariateSeries(order, {k * step: {k * z: 1} for k in range(order // step + 1)})


def _merge(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return _prune(out)


def _product(order: int, factors: Iterable[BivariateSeries]) -> BivariateSeries:
    acc = BivariateSeries.one(order)
    for f in factors:
        acc = acc * f
    return acc


# ---------------------------------------------------------------------------
# characters


def fock_character_bivariate(order: int) -> BivariateSeries:
    """``1 / prod_{j>=1} (1 - z q^(2j-3/2)) (1 - z^-1 q^(2j-1/2))``.

    Factors whose leading exponent exceeds the cutoff contribute nothing and are skipped.
    """
    factors = []
    j = 1
    while 4 * j - 3 <= order:
        factors.append(_geometric(order, 4 * j - 3, 1))
        if 4 * j - 1 <= order:
            factors.append(_geometric(order, 4 * j - 1, -1))
        j += 1
    return _product(order, factors)


def fock_character(order: int) -> QSeries:
    """``1 / prod_{j>=1} (1 - q^((2j-1)/2))``."""
    acc = QSeries.one(order)
    for step in range(1, order + 1, 2):
        acc = acc * QSeries(order, {k * step: 1 for k in range(order // step + 1)})
    return acc


def enumerated_character(order: int, bivariate: bool = False) -> QSeries | BivariateSeries:
    """Brute force: sum of ``q^deg z^chg`` over every monomial with degree <= order."""
    acc: dict[int, dict[int, int]] = {}
    for d in range(order + 1):
        for m in graded_basis(d).monomials:
            slot = acc.setdefault(degree(m), {})
            c = charge(m)
            slot[c] = slot.get(c, 0) + 1
    series = BivariateSeries(order, acc)
    return series if bivariate else series.at_z_equal_one()


def triangular_series(order: int) -> QSeries:
    """``sum_{m>=0} q^(T_m)`` with ``T_m = m(m+1)/2`` (integer q-powers)."""
    coeffs = {}
    m = 0
    while m * (m + 1) <= order:  # doubled exponent 2*T_m
        coeffs[m * (m + 1)] = 1
        m += 1
    return QSeries(order, coeffs)


def _integer_q_product(order: int, steps: Iterable[int], sign: int) -> QSeries:
    """``prod (1 + sign q^s)`` over integer steps s (doubled cutoff)."""
    acc = QSeries.one(order)
    for s in steps:
        if 2 * s > order:
            continue
        acc = acc * QSeries(order, {0: 1, 2 * s: sign})
    return acc


def half_odd_distinct_series(order: int) -> QSeries:
    """``prod_{i>=1} (1 + q^((2i-1)/2))``."""
    acc = QSeries.one(order)
    for step in range(1, order + 1, 2):
        acc = acc * QSeries(order, {0: 1, step: 1})
    return acc


def hwv_character(order: int) -> QSeries:
    """``(sum_m q^(T_m)) * prod_{i>=1} (1 + q^((2i-1)/2))``."""
    return triangular_series(order) * half_odd_distinct_series(order)


def heisenberg_module_factor(order: int) -> QSeries:
    """``1 / prod_{i>=1} (1 - q^(2i))``: graded dimension of one irreducible module."""
    return _integer_q_product(order, range(2, order // 2 + 1, 2), -1).inverse()


# ---------------------------------------------------------------------------
# identity checks


@dataclass(frozen=True)
class IdentityResult:
    name: str
    order: int  # doubled
    passed: bool
    first_mismatch: tuple | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "order": format_half(self.order), "pass": self.passed}
        if self.first_mismatch is not None:
            e, ours, theirs = self.first_mismatch
            out["first_mismatch"] = {"exponent": format_half(e), "lhs": ours, "rhs": theirs}
        return out


def triangular_identity_check(order: int) -> IdentityResult:
    """``sum q^(T_m) == prod (1-q^(2i)) / prod (1-q^(2i-1))`` up to integer order ``order``."""
    o2 = 2 * order
    rhs = _integer_q_product(o2, range(2, order + 1, 2), -1) * _integer_q_product(o2, range(1, order + 1, 2), -1).inverse()
    mismatch = triangular_series(o2).first_mismatch(rhs)
    return IdentityResult("triangular", o2, mismatch is None, mismatch)


def jacobi_sides(order: int) -> tuple[BivariateSeries, BivariateSeries]:
    """Both sides of ``prod (1-q^i)(1+z q^(i-1))(1+z^-1 q^i) = sum_m z^m q^(m(m-1)/2)``
    to integer order ``order``."""
    o2 = 2 * order
    factors = []
    for i in range(1, order + 2):
        if i <= order:
            factors.append(BivariateSeries(o2, {0: {0: 1}, 2 * i: {0: -1}}))
            factors.append(BivariateSeries(o2, {0: {0: 1}, 2 * i: {-1: 1}}))
        if i - 1 <= order:
            factors.append(BivariateSeries(o2, {0: _merge({0: 1}, {1: 1})} if i == 1 else {0: {0: 1}, 2 * (i - 1): {1: 1}}))
    lhs = _product(o2, factors)
    theta: dict[int, dict[int, int]] = {}
    m = 0
    while True:
        added = False
        for mm in {m, 1 - m}:
            e = mm * (mm - 1)  # doubled exponent of q^(m(m-1)/2)
            if e <= o2:
                theta.setdefault(e, {})[mm] = 1
                added = True
        if not added:
            break
        m += 1
    return lhs, BivariateSeries(o2, theta)


def jacobi_triple_check(order: int) -> IdentityResult:
    lhs, rhs = jacobi_sides(order)
    mismatch = lhs.first_mismatch(rhs)
    return IdentityResult("jacobi_triple", 2 * order, mismatch is None, mismatch)


def jacobi_at_z_one_check(order: int) -> IdentityResult:
    """``z = 1``: ``2 sum q^(T_m) = 2 prod (1-q^(2i))(1+q^i)``."""
    lhs, _ = jacobi_sides(order)
    o2 = 2 * order
    rhs = _integer_q_product(o2, range(2, order + 1, 2), -1) * _integer_q_product(o2, range(1, order + 1), 1) * 2
    mismatch = lhs.at_z_equal_one().first_mismatch(triangular_series(o2) * 2)
    if mismatch is None:
        mismatch = rhs.first_mismatch(triangular_series(o2) * 2)
    return IdentityResult("jacobi_z_equal_one", o2, mismatch is None, mismatch)


def hwv_factorization_check(order: int) -> IdentityResult:
    """``hwv_character / prod (1 - q^(2i)) == fock_character`` (doubled order)."""
    lhs = hwv_character(order) * heisenberg_module_factor(order)
    mismatch = lhs.first_mismatch(fock_character(order))
    return IdentityResult("hwv_factorization", order, mismatch is None, mismatch)


def character_check(order: int) -> IdentityResult:
    mismatch = fock_character(order).first_mismatch(enumerated_character(order))
    return IdentityResult("fock_character", order, mismatch is None, mismatch)


def bivariate_character_check(order: int) -> IdentityResult:
    mismatch = fock_character_bivariate(order).first_mismatch(enumerated_character(order, bivariate=True))
    return IdentityResult("fock_character_bivariate", order, mismatch is None, mismatch)


# ---------------------------------------------------------------------------
# P_tdo partitions


@dataclass(frozen=True, order=True)
class PtdoPartition:
    """A triangular part ``T_m`` plus distinct half-odd parts (stored doubled, decreasing)."""

    m: int
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("triangular index must be nonnegative")
        if any(p <= 0 or p % 2 == 0 for p in self.parts):
            raise ValueError("parts must be positive half-odd integers")
        if any(a <= b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be strictly decreasing")

    @property
    def triangular(self) -> int:
        return self.m * (self.m + 1) // 2

    @property
    def weight(self) -> int:
        """Doubled weight ``2 (T_m + sum parts)``."""
        return 2 * self.triangular + sum(self.parts)

    def __str__(self) -> str:
        inner = ", ".join([f"T_{self.m}"] + [format_half(p) for p in self.parts])
        return f"({inner})"


def _distinct_odd(total: int, below: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into distinct odd parts ``< below``, lexicographic (increasing largest part)."""
    if total == 0:
        yield ()
        return
    for p in range(1, min(total, below - 1) + 1, 2):
        for rest in _distinct_odd(total - p, p):
            yield (p,) + rest


def enumerate_ptdo(w2: int) -> list[PtdoPartition]:
    """All P_tdo partitions of doubled weight ``w2``: m ascending, then parts lexicographic."""
    if w2 < 0:
        raise ValueError("weight must be nonnegative")
    out = []
    m = 0
    while m * (m + 1) <= w2:
        rest = w2 - m * (m + 1)
        out.extend(PtdoPartition(m, parts) for parts in _distinct_odd(rest, rest + 2))
        m += 1
    return out


def ptdo_series(order: int) -> QSeries:
    return QSeries(order, {d: len(enumerate_ptdo(d)) for d in range(order + 1)})


def ptdo_character_check(order: int) -> IdentityResult:
    mismatch = ptdo_series(order).first_mismatch(hwv_character(order))
    return IdentityResult("ptdo_character", order, mismatch is None, mismatch)


def all_identities(order: int) -> list[IdentityResult]:
    """Every identity at the given doubled order (integer-exponent ones at ``order // 2``)."""
    return [
        character_check(order),
        bivariate_character_check(order),
        hwv_factorization_check(order),
        ptdo_character_check(order),
        triangular_identity_check(order // 2),
        jacobi_triple_check(order // 2),
        jacobi_at_z_one_check(order // 2),
    ]


def iter_coefficients(series: QSeries) -> Iterator[tuple[str, int]]:
    for e in range(series.order + 1):
        yield format_half(e), series.coeffs.get(e, 0)
