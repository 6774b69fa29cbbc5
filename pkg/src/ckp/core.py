"""Fock space of the neutral twisted boson and the action of its modes.

Mode indices n are half-odd integers and are stored doubled (``2n``, always
odd) throughout the package, as are degrees.  A basis monomial is a tuple of
``(doubled_index, multiplicity)`` pairs with negative odd indices, sorted by
increasing index (i.e. by decreasing ``|index|``).  The empty tuple is the
vacuum ``|0>``.

The commutation relations are

    [chi_m, chi_n] = (-1)^(m - 1/2) delta_{m,-n}

and ``chi_n |0> = 0`` for ``n > 0``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from gmpy2 import mpq

Monomial = tuple  # tuple[tuple[int, int], ...]

VACUUM: Monomial = ()

_HALF_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_half(text: str | int | Fraction) -> int:
    """Parse ``"9/2"``, ``"3"`` or ``"-1/2"`` into a doubled integer.

    Only exact integer or fraction literals are accepted; decimals are refused.
    """
    if isinstance(text, bool):
        raise TypeError("booleans are not half-integers")
    if isinstance(text, int):
        return 2 * text
    if isinstance(text, Fraction):
        value = text
    else:
        match = _HALF_RE.match(str(text))
        if match is None:
            raise ValueError(f"not an exact half-integer literal: {text!r}")
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value = Fraction(int(num), int(den) if den is not None else 1)
    if (2 * value).denominator != 1:
        raise ValueError(f"{text!r} is not a multiple of 1/2")
    return int(2 * value)


def format_half(doubled: int) -> str:
    """Inverse of :func:`parse_half`: ``9 -> "9/2"``, ``4 -> "2"``."""
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


def half(doubled: int) -> Fraction:
    return Fraction(doubled, 2)


def _check_index(a2: int) -> None:
    if a2 % 2 == 0:
        raise ValueError(f"mode index must be half-odd, got doubled value {a2}")


def sign_for(a2: int) -> int:
    """``(-1)^(a - 1/2)`` for the half-odd index ``a = a2/2``."""
    return -1 if ((a2 - 1) // 2) % 2 else 1


# ---------------------------------------------------------------------------
# monomials


def monomial(parts: Mapping[int, int] | Iterable[int] = ()) -> Monomial:
    """Build the canonical monomial.

    ``parts`` is either a mapping ``doubled_index -> multiplicity`` or an
    iterable of doubled creation indices (repeats allowed), e.g.
    ``monomial([-3, -1, -1])`` is ``chi_{-3/2} chi_{-1/2}^2 |0>``.
    """
    if isinstance(parts, Mapping):
        counts = {int(k): int(v) for k, v in parts.items() if v}
    else:
        counts = {}
        for a2 in parts:
            counts[int(a2)] = counts.get(int(a2), 0) + 1
    for a2, mult in counts.items():
        _check_index(a2)
        if a2 > 0:
            raise ValueError(f"monomials hold creation indices only, got {a2}/2")
        if mult < 0:
            raise ValueError("multiplicities must be positive")
    return tuple(sorted(counts.items()))


def charge(m: Monomial) -> int:
    """Eigenvalue of ``h_0``: ``+mult`` for ``j = 1/2 mod 2``, ``-mult`` for ``j = 3/2 mod 2``."""
    total = 0
    for a2, mult in m:
        total += mult if (-a2) % 4 == 1 else -mult
    return total


def degree(m: Monomial) -> int:
    """Doubled degree ``2 * sum(mult * j)``."""
    return sum(-a2 * mult for a2, mult in m)


def indices(m: Monomial) -> list[int]:
    """Creation indices with repetition, in the monomial's canonical order."""
    return [a2 for a2, mult in m for _ in range(mult)]


@lru_cache(maxsize=None)
def create(m: Monomial, a2: int) -> Monomial:
    """Monomial of ``chi_a m`` for a creation index ``a < 0``."""
    parts = dict(m)
    parts[a2] = parts.get(a2, 0) + 1
    return tuple(sorted(parts.items()))


@lru_cache(maxsize=None)
def annihilate(m: Monomial, a2: int) -> tuple[int, Monomial] | None:
    """``chi_a m`` for ``a > 0`` as ``(integer coefficient, monomial)`` or None."""
    parts = dict(m)
    mult = parts.get(-a2, 0)
    if not mult:
        return None
    if mult == 1:
        del parts[-a2]
    else:
        parts[-a2] = mult - 1
    return mult * sign_for(a2), tuple(sorted(parts.items()))


def format_monomial(m: Monomial) -> str:
    if not m:
        return "|0>"
    factors = []
    for a2, mult in m:
        power = f"^{mult}" if mult > 1 else ""
        factors.append(f"chi[{a2}/2]{power}")
    return " ".join(factors) + "|0>"


# ---------------------------------------------------------------------------
# sparse vectors


class SparseVector:
    """Finite linear combination of hashable basis keys.

    Zero coefficients are pruned on construction.  Instances are treated as
    immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Any] | None = None):
        self._terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def _wrap(cls, terms: dict) -> "SparseVector":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> Mapping[Hashable, Any]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key) -> Any:
        return self._terms.get(key, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, SparseVector):
            if other == 0:
                return self
            return NotImplemented
        acc = dict(self._terms)
        add_into(acc, other._terms)
        return type(self)._wrap(acc)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparseVector):
            if other == 0:
                return self
            return NotImplemented
        acc = dict(self._terms)
        add_into(acc, other._terms, -1)
        return type(self)._wrap(acc)

    def __mul__(self, scalar):
        if isinstance(scalar, SparseVector):
            return NotImplemented
        if scalar == 0:
            return type(self)._wrap({})
        return type(self)._wrap({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / scalar)

    def map_keys(self, fn: Callable[[Hashable], Hashable]):
        acc: dict = {}
        for k, c in self._terms.items():
            add_into(acc, {fn(k): c})
        return type(self)._wrap(acc)


def add_into(acc: dict, terms: Mapping, scale: Any = 1) -> None:
    """In-place ``acc += scale * terms`` with zero pruning."""
    get = acc.get
    if scale == 1:
        for k, c in terms.items():
            value = get(k, 0) + c
            if value:
                acc[k] = value
            else:
                acc.pop(k, None)
        return
    for k, c in terms.items():
        value = get(k, 0) + scale * c
        if value:
            acc[k] = value
        else:
            acc.pop(k, None)


class FockVector(SparseVector):
    """Element of the Fock space with exact rational (``gmpy2.mpq``) coefficients."""

    __slots__ = ()

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        super().__init__({tuple(k): mpq(c) for k, c in (terms or {}).items()})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls._wrap({VACUUM: mpq(1)})

    @classmethod
    def basis(cls, m: Monomial, coeff: Any = 1) -> "FockVector":
        return cls({m: coeff})

    @classmethod
    def of(cls, *pairs: tuple[Any, Iterable[int]]) -> "FockVector":
        """``FockVector.of((1, [-3, -1]), (-2, [-5]))`` builds a combination
        of monomials given as lists of doubled creation indices."""
        acc: dict = {}
        for coeff, idx in pairs:
            add_into(acc, {monomial(idx): mpq(coeff)})
        return cls._wrap(acc)

    def degrees(self) -> set[int]:
        return {degree(m) for m in self._terms}

    def max_degree(self) -> int:
        return max((degree(m) for m in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def components(self, key: Callable[[Monomial], Hashable]) -> dict[Hashable, "FockVector"]:
        """Split into pieces grouped by ``key(monomial)``, in sorted key order."""
        groups: dict = {}
        for m, c in self._terms.items():
            groups.setdefault(key(m), {})[m] = c
        return {k: FockVector._wrap(groups[k]) for k in sorted(groups)}

    def to_json(self) -> list:
        return fock_to_json(self)

    @classmethod
    def from_json(cls, data: list) -> "FockVector":
        return fock_from_json(data)

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        parts = []
        for m in sorted(self._terms, key=lambda m: (degree(m), m)):
            parts.append(f"{self._terms[m]}*{format_monomial(m)}")
        return "FockVector(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# mode action


def apply_mode(a2: int, v: FockVector) -> FockVector:
    """Apply ``chi_a`` (``a = a2/2``) to ``v``."""
    _check_index(a2)
    acc: dict = {}
    if a2 < 0:
        for m, c in v.items():
            acc[create(m, a2)] = c
        return FockVector._wrap(acc)
    for m, c in v.items():
        hit = annihilate(m, a2)
        if hit is not None:
            k, target = hit
            add_into(acc, {target: c * k})
    return FockVector._wrap(acc)


def mode_on_monomial(a2: int, m: Monomial) -> dict[Monomial, int]:
    """``chi_a m`` as a small dict (at most one term)."""
    if a2 < 0:
        return {create(m, a2): 1}
    hit = annihilate(m, a2)
    if hit is None:
        return {}
    return {hit[1]: hit[0]}


@lru_cache(maxsize=None)
def pair_on_monomial(a2: int, b2: int, m: Monomial) -> tuple[tuple[Monomial, int], ...]:
    """``:chi_a chi_b: m`` with annihilators moved to the right."""
    if a2 > 0 and b2 < 0:
        first, second = a2, b2
    else:
        first, second = b2, a2
    acc: dict = {}
    for m1, c1 in mode_on_monomial(first, m).items():
        for m2, c2 in mode_on_monomial(second, m1).items():
            add_into(acc, {m2: c1 * c2})
    return tuple(acc.items())


def normal_ordered_pair(a2: int, b2: int, v: FockVector) -> FockVector:
    """Apply ``:chi_a chi_b:`` to ``v``."""
    _check_index(a2)
    _check_index(b2)
    acc: dict = {}
    for m, c in v.items():
        for target, k in pair_on_monomial(a2, b2, m):
            add_into(acc, {target: c * k})
    return FockVector._wrap(acc)


# ---------------------------------------------------------------------------
# serialization


def monomial_to_json(m: Monomial) -> list:
    return [[a2, mult] for a2, mult in m]


def monomial_from_json(data: list) -> Monomial:
    return monomial({int(a2): int(mult) for a2, mult in data})


def fock_to_json(v: FockVector) -> list:
    """``[["p/q", [[doubled_index, multiplicity], ...]], ...]`` in canonical order."""
    return [[str(v.coefficient(m)), monomial_to_json(m)] for m in sorted(v.keys(), key=lambda m: (degree(m), m))]


def fock_from_json(data: list | str) -> FockVector:
    if isinstance(data, str):
        data = json.loads(data)
    acc: dict = {}
    for coeff, parts in data:
        add_into(acc, {monomial_from_json(parts): mpq(coeff)})
    return FockVector._wrap(acc)
