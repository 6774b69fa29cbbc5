"""Graded components of the Fock space and Heisenberg highest weight vectors."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import FockVector, Monomial, charge, format_half
from .linalg import exact_kernel, rank
from .operators import heisenberg_mode


@dataclass(frozen=True)
class GradedBasis:
    degree: int  # doubled
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)


@dataclass(frozen=True)
class HwvReport:
    degree: int  # doubled
    dimension: int
    charge_spectrum: tuple[int, ...]
    basis: tuple[FockVector, ...] = field(repr=False)
    charges: tuple[int, ...] = field(repr=False, default=())

    def to_json(self) -> dict:
        return {
            "degree": format_half(self.degree),
            "dimension": self.dimension,
            "charges": list(self.charge_spectrum),
            "basis": [v.to_json() for v in self.basis],
        }


def _odd_partitions(total: int, largest: int) -> Iterator[list[int]]:
    """Partitions of ``total`` into odd parts ``<= largest``, largest parts first."""
    if total == 0:
        yield []
        return
    part = largest if largest % 2 else largest - 1
    while part >= 1:
        if part <= total:
            for rest in _odd_partitions(total - part, part):
                yield [part] + rest
        part -= 2


def graded_basis(d2: int) -> GradedBasis:
    """All monomials of doubled degree ``d2`` (partitions of ``d2`` into odd parts)."""
    if not isinstance(d2, int) or d2 < 0:
        raise ValueError(f"degree must be a nonnegative half-integer, got doubled value {d2!r}")
    monos = []
    for parts in _odd_partitions(d2, d2):
        counts = Counter(parts)
        monos.append(tuple(sorted((-p, k) for p, k in counts.items())))
    return GradedBasis(d2, tuple(monos))


def monomials_up_to(d2: int) -> list[Monomial]:
    return [m for d in range(d2 + 1) for m in graded_basis(d).monomials]


def _conditions(d2: int) -> range:
    # h_n lowers the degree by 2n, so h_n v = 0 automatically once 2n > deg v;
    # the conditions with 4n <= d2 are therefore all of them.
    return range(1, d2 // 4 + 1)


def _kernel_block(monos: Sequence[Monomial], conditions: Iterable[int]) -> list[FockVector]:
    columns = [FockVector.basis(m) for m in monos]
    row_index: dict = {}
    entries: list[dict] = []
    for n in conditions:
        for j, col in enumerate(columns):
            for target, c in heisenberg_mode(n, col).items():
                key = (n, target)
                if key not in row_index:
                    row_index[key] = len(entries)
                    entries.append({})
                entries[row_index[key]][j] = c
    matrix = [[row.get(j, 0) for j in range(len(monos))] for row in entries]
    kernel = exact_kernel(matrix, len(monos))
    return [FockVector({monos[j]: x for j, x in enumerate(vec) if x != 0}) for vec in kernel]


def hwv_basis(d2: int, extra_conditions: int = 0) -> HwvReport:
    """Exact basis of the highest weight vectors of doubled degree ``d2``.

    The kernel of ``v -> (h_1 v, ..., h_N v)`` is solved separately on each
    charge block, highest charge first.  ``extra_conditions`` appends further
    (redundant) ``h_n`` conditions and exists only to test that they are.
    """
    gb = graded_basis(d2)
    blocks: dict[int, list[Monomial]] = {}
    for m in gb.monomials:
        blocks.setdefault(charge(m), []).append(m)
    conditions = range(1, d2 // 4 + 1 + extra_conditions)
    basis: list[FockVector] = []
    charges: list[int] = []
    for c in sorted(blocks, reverse=True):
        vecs = _kernel_block(blocks[c], conditions)
        basis.extend(vecs)
        charges.extend([c] * len(vecs))
    return HwvReport(d2, len(basis), tuple(charges), tuple(basis), tuple(charges))


def hwv_charge_spectrum(d2: int) -> tuple[int, ...]:
    """Multiset of ``h_0`` eigenvalues on the hwv space, sorted descending."""
    return hwv_basis(d2).charge_spectrum


def is_hwv(v: FockVector) -> bool:
    if not v:
        raise ValueError("the zero vector is not a highest weight vector")
    return all(not heisenberg_mode(n, v) for n in _conditions(v.max_degree()))


def hwv_witness(v: FockVector) -> tuple[int, FockVector] | None:
    """First ``(n, h_n v)`` with ``h_n v != 0``, or None for a hwv."""
    for n in _conditions(v.max_degree()):
        image = heisenberg_mode(n, v)
        if image:
            return n, image
    return None


def in_span(basis: Sequence[FockVector], v: FockVector) -> bool:
    """Exact membership of ``v`` in the span of ``basis``."""
    keys = sorted({m for b in list(basis) + [v] for m in b.keys()})
    rows = [[b.coefficient(m) for m in keys] for b in basis]
    r = rank(rows, len(keys)) if rows else 0
    return rank(rows + [[v.coefficient(m) for m in keys]], len(keys)) == r


def max_workers() -> int:
    """Worker count for process pools, capped by ``CKP_MAX_THREADS``."""
    cap = os.environ.get("CKP_MAX_THREADS")
    n = os.cpu_count() or 1
    return max(1, min(n, int(cap))) if cap else n


def hwv_reports(degrees: Sequence[int], parallel: bool = False) -> list[HwvReport]:
    """Reports for several doubled degrees, returned in input order."""
    if not parallel or len(degrees) < 2:
        return [hwv_basis(d) for d in degrees]
    with ProcessPoolExecutor(max_workers=max_workers()) as pool:
        return list(pool.map(hwv_basis, degrees))
