"""Verification suites behind the command line, each producing a :class:`Report`."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .bosonize import (
    PolyState,
    beta_bos_mode,
    block_basis,
    chi_bos_mode,
    gamma_bos_mode,
    hirota_residue_bos,
    hx_mode,
    image_rank,
    intertwine_tensor,
    intertwiner,
)
from .core import FockVector, apply_mode, charge, format_half, sign_for
from .hwv import graded_basis, hwv_basis, hwv_reports, is_hwv, max_workers
from .operators import beta_mode, commutator, gamma_mode, heisenberg_mode, hirota_residue
from .qseries import all_identities, enumerated_character, fock_character, fock_character_bivariate, hwv_character
from .symplectic import (
    EXCHANGE_RELATIONS,
    anticommutator,
    check_exchange,
    hbeta_mode,
    hgamma_mode,
    hwv_virasoro_mode,
    translation,
)

SCHEMA = 1


@dataclass
class Check:
    name: str
    passed: bool
    expected: Any = None
    actual: Any = None
    detail: Any = None
    runtime_ms: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out: dict = {"name": self.name, "pass": self.passed}
        for key in ("expected", "actual", "detail"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if timings and self.runtime_ms is not None:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timings: bool = False) -> dict:
        out = {"schema": SCHEMA, "suite": self.suite, "pass": self.passed}
        out.update(self.data)
        out["checks"] = [c.to_json(timings) for c in self.checks]
        return out


class _Failure(Exception):
    """Carries the first counterexample out of a check body."""

    def __init__(self, expected=None, actual=None, detail=None):
        super().__init__(detail)
        self.expected, self.actual, self.detail = expected, actual, detail


def _run(name: str, body: Callable[[], None]) -> Check:
    start = time.perf_counter()
    try:
        body()
        check = Check(name, True)
    except _Failure as f:
        check = Check(name, False, f.expected, f.actual, f.detail)
    check.runtime_ms = (time.perf_counter() - start) * 1000
    return check


def _expect_equal(actual, expected, detail=None) -> None:
    if actual != expected:
        raise _Failure(expected.to_json(), actual.to_json(), detail)


def _pmap(fn: Callable, items: Sequence, parallel: bool) -> list:
    if not parallel or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=max_workers()) as pool:
        return list(pool.map(fn, items))


def _fock_basis(max_d2: int, min_d2: int = 0) -> list[FockVector]:
    return [FockVector.basis(m) for d in range(min_d2, max_d2 + 1) for m in graded_basis(d).monomials]


def _hwv_vectors(max_d2: int) -> list[FockVector]:
    return [v for d in range(max_d2 + 1) for v in hwv_basis(d).basis]


def _odd_indices(max_mode2: int) -> list[int]:
    return [a2 for a2 in range(-max_mode2, max_mode2 + 1) if a2 % 2]


# ---------------------------------------------------------------------------
# hwv


def hwv_suite(max_d2: int, parallel: bool = False) -> Report:
    reports = hwv_reports(list(range(max_d2 + 1)), parallel)
    expected_dims = hwv_character(max_d2)
    report = Report("hwv", data={"degrees": [r.to_json() for r in reports]})

    def dimensions():
        for r in reports:
            if r.dimension != expected_dims[r.degree]:
                raise _Failure(expected_dims[r.degree], r.dimension, {"degree": format_half(r.degree)})

    def charge_structure():
        for r in reports:
            charges = r.charge_spectrum
            if max(charges) != r.degree or any((c - charges[0]) % 4 for c in charges):
                raise _Failure(None, list(charges), {"degree": format_half(r.degree)})

    def annihilated():
        for r in reports:
            for v in r.basis:
                if not is_hwv(v):
                    raise _Failure(None, v.to_json(), {"degree": format_half(r.degree)})

    report.checks += [
        _run("dimension_matches_hwv_character", dimensions),
        _run("charge_structure", charge_structure),
        _run("basis_annihilated_by_positive_modes", annihilated),
    ]
    return report


# ---------------------------------------------------------------------------
# characters and identities


def char_suite(order2: int, bivariate: bool = False) -> Report:
    if bivariate:
        product = fock_character_bivariate(order2)
        counted = enumerated_character(order2, bivariate=True)
        rows = [
            {
                "exponent": format_half(e),
                "product": {str(z): c for z, c in sorted(product[e].items())},
                "enumerated": {str(z): c for z, c in sorted(counted[e].items())},
            }
            for e in range(order2 + 1)
        ]
    else:
        product = fock_character(order2)
        counted = enumerated_character(order2)
        rows = [{"exponent": format_half(e), "product": product[e], "enumerated": counted[e]} for e in range(order2 + 1)]
    report = Report("char", data={"order": format_half(order2), "bivariate": bivariate, "coefficients": rows})

    def agree():
        mismatch = product.first_mismatch(counted)
        if mismatch is not None:
            e, ours, theirs = mismatch
            if bivariate:
                ours, theirs = ({str(z): c for z, c in p.items()} for p in (ours, theirs))
            raise _Failure(theirs, ours, {"exponent": format_half(e)})

    report.checks.append(_run("product_formula_matches_enumeration", agree))
    return report


def identities_suite(order2: int) -> Report:
    results = all_identities(order2)
    report = Report("identities", data={"identities": [r.to_json() for r in results]})
    for r in results:
        detail = r.to_json().get("first_mismatch")
        report.checks.append(Check(r.name, r.passed, detail=detail))
    return report


# ---------------------------------------------------------------------------
# symplectic fermions


def symplectic_suite(max_d2: int, max_mode: int) -> Report:
    vac = FockVector.vacuum()
    chi_half = FockVector.of((1, [-1]))
    hwvs = _hwv_vectors(max_d2)
    modes = range(-max_mode, max_mode + 1)
    report = Report("symplectic-check", data={"max_degree": format_half(max_d2), "max_mode": max_mode})

    def creation():
        _expect_equal(hbeta_mode(-1, vac), FockVector.of((1, [-3])), "H^beta_(-1)|0>")
        _expect_equal(hgamma_mode(-1, vac), FockVector.of((1, [-1])), "H^gamma_(-1)|0>")
        for n in range(max_mode + 1):
            _expect_equal(hbeta_mode(n, vac), FockVector(), f"H^beta_({n})|0>")
            _expect_equal(hgamma_mode(n, vac), FockVector(), f"H^gamma_({n})|0>")

    def generation():
        for op, a2, name in ((hbeta_mode, -3, "beta"), (hgamma_mode, -1, "gamma")):
            v = vac
            for n in range(1, max_mode + 2):
                v = op(-n, v)
                _expect_equal(v, FockVector.of((1, [a2] * n)), f"H^{name} generation, n={n}")

    def anticommutators(op_a, op_b, scalar: Callable[[int, int], int]):
        def body():
            for v in hwvs:
                for m in modes:
                    for n in modes:
                        got = anticommutator(lambda w: op_a(m, w), lambda w: op_b(n, w), v)
                        _expect_equal(got, v * scalar(m, n), {"m": m, "n": n, "v": v.to_json()})

        return body

    def preservation():
        for v in hwvs:
            for n in modes:
                for op, name in ((hbeta_mode, "beta"), (hgamma_mode, "gamma")):
                    w = op(n, v)
                    if w and not is_hwv(w):
                        raise _Failure(None, w.to_json(), {"field": name, "n": n, "v": v.to_json()})

    def central():
        L = hwv_virasoro_mode
        got = L(2, L(-2, vac)) - L(-2, L(2, vac)) - L(0, vac) * 4
        _expect_equal(got, -vac, "([L_2, L_-2] - 4 L_0)|0>")

    def vacuum_virasoro():
        for n in range(-1, max_mode + 1):
            _expect_equal(hwv_virasoro_mode(n, vac), FockVector(), f"L_{n}|0>")

    def translation_rule():
        for v in (vac, chi_half):
            for n in modes:
                for op in (hbeta_mode, hgamma_mode):
                    got = translation(op(n, v)) - op(n, translation(v))
                    _expect_equal(got, op(n - 1, v) * -n, {"n": n, "field": op.__name__, "v": v.to_json()})

    def charge_shift():
        for v in hwvs:
            for n in modes:
                for op, shift in ((hbeta_mode, -1), (hgamma_mode, 1)):
                    got = commutator(lambda w: heisenberg_mode(0, w), lambda w: op(n, w), v)
                    _expect_equal(got, op(n, v) * shift, {"n": n, "field": op.__name__, "v": v.to_json()})

    def ladder():
        for v in _fock_basis(8):
            for n in range(-2, 3):
                for k in range(-2, 3):
                    for op, sign in ((beta_mode, -1), (gamma_mode, 1)):
                        got = commutator(lambda w: heisenberg_mode(n, w), lambda w: op(k, w), v)
                        _expect_equal(got, op(k - n, v) * sign, {"n": n, "k": k, "mode": op.__name__, "v": v.to_json()})

    def exchange():
        for rel in EXCHANGE_RELATIONS:
            for v in (vac, chi_half):
                ok, where = check_exchange(rel, v, max_mode + 1)
                if not ok:
                    raise _Failure(None, None, {"relation": rel.name, "v": v.to_json(), "powers": list(where)})

    report.checks += [
        _run("creation_conditions", creation),
        _run("generation", generation),
        _run("anticommutator_beta_gamma", anticommutators(hbeta_mode, hgamma_mode, lambda m, n: m if m + n == 0 else 0)),
        _run("anticommutator_beta_beta", anticommutators(hbeta_mode, hbeta_mode, lambda m, n: 0)),
        _run("anticommutator_gamma_gamma", anticommutators(hgamma_mode, hgamma_mode, lambda m, n: 0)),
        _run("hwv_preservation", preservation),
        _run("central_charge", central),
        _run("vacuum_virasoro", vacuum_virasoro),
        _run("translation_rule", translation_rule),
        _run("charge_shift", charge_shift),
        _run("heisenberg_ladder", ladder),
        _run("exchange_relations", exchange),
    ]
    return report


# ---------------------------------------------------------------------------
# bosonization


def _entry_json(c) -> list[str]:
    return c.to_json() if c else ["0", "0"]


def _first_entry_mismatch(actual: PolyState, expected: PolyState) -> dict:
    key = min((actual - expected).keys())
    return {"row": key.to_json(), "expected": _entry_json(expected.coefficient(key)), "actual": _entry_json(actual.coefficient(key))}


def _chi_commutators_on_lattice(args: tuple[int, int, int]) -> dict | None:
    """First failing matrix entry of ``[chi_a, chi_b] = (-1)^(a-1/2) delta_(a,-b)`` on one lattice block."""
    lattice, max_weight, max_mode2 = args
    indices = _odd_indices(max_mode2)
    for m in block_basis(max_weight, [lattice]):
        s = PolyState.basis(m)
        for a2 in indices:
            for b2 in indices:
                got = chi_bos_mode(a2, chi_bos_mode(b2, s)) - chi_bos_mode(b2, chi_bos_mode(a2, s))
                want = s * sign_for(a2) if a2 == -b2 else PolyState()
                if got != want:
                    entry = _first_entry_mismatch(got, want)
                    entry.update({"a": format_half(a2), "b": format_half(b2), "column": m.to_json()})
                    return entry
    return None


LATTICE_BLOCKS = range(-2, 3)


def bosonize_suite(max_weight: int, max_mode2: int, max_d2: int = 6, hirota_d2: int = 4, parallel: bool = False) -> Report:
    report = Report(
        "bosonize-check",
        data={
            "max_weight": max_weight,
            "max_mode": format_half(max_mode2),
            "max_degree": format_half(max_d2),
            "lattice_charges": list(LATTICE_BLOCKS),
        },
    )
    small = [PolyState.basis(m) for m in block_basis(min(max_weight, 3), LATTICE_BLOCKS)]
    fock = _fock_basis(max_d2)

    def lattice_shift():
        for s in small:
            (c,) = s.lattice_charges()
            for k in range(-2, 3):
                for op, shift in ((beta_bos_mode, -1), (gamma_bos_mode, 1)):
                    out = op(k, s)
                    if out and out.lattice_charges() != {c + shift}:
                        raise _Failure(None, out.to_json(), {"mode": op.__name__, "k": k, "input": s.to_json()})

    def chi_commutators():
        args = [(c, max_weight, max_mode2) for c in LATTICE_BLOCKS]
        for entry in _pmap(_chi_commutators_on_lattice, args, parallel):
            if entry is not None:
                raise _Failure(entry.pop("expected"), entry.pop("actual"), entry)

    def beta_gamma(op_a, op_b, scalar):
        def body():
            for s in small:
                for m in range(-2, 3):
                    for n in range(-2, 3):
                        got = op_a(m, op_b(n, s)) - op_b(n, op_a(m, s))
                        _expect_equal(got, s * scalar(m, n), {"m": m, "n": n, "input": s.to_json()})

        return body

    def equivariance():
        for v in fock:
            image = intertwiner(v)
            for a2 in _odd_indices(max_mode2):
                _expect_equal(chi_bos_mode(a2, image), intertwiner(apply_mode(a2, v)), {"a": format_half(a2), "v": v.to_json()})

    def injective():
        for d in range(max_d2 + 1):
            vecs = [FockVector.basis(m) for m in graded_basis(d).monomials]
            r = image_rank(vecs)
            if r != len(vecs):
                raise _Failure(len(vecs), r, {"degree": format_half(d)})

    def lattice_charge():
        for v in fock:
            (m,) = v.keys()
            charges = intertwiner(v).lattice_charges()
            if charges != {charge(m)}:
                raise _Failure(charge(m), sorted(charges), {"v": v.to_json()})

    def heisenberg():
        for v in _fock_basis(min(max_d2, 4)):
            for n in range(-3, 4):
                _expect_equal(hx_mode(n, intertwiner(v)), intertwiner(heisenberg_mode(n, v)), {"n": n, "v": v.to_json()})

    pairs = [(u, w) for u in _fock_basis(hirota_d2) for w in _fock_basis(hirota_d2)]

    def hirota_match():
        for u, w in pairs:
            _expect_equal(hirota_residue_bos(intertwiner(u), intertwiner(w)), intertwine_tensor(hirota_residue(u, w)),
                          {"u": u.to_json(), "w": w.to_json()})

    def hirota_antisymmetry():
        for u, w in pairs:
            s, t = intertwiner(u), intertwiner(w)
            _expect_equal(hirota_residue_bos(t, s).swap(), -hirota_residue_bos(s, t), {"u": u.to_json(), "w": w.to_json()})

    report.checks += [
        _run("lattice_shift", lattice_shift),
        _run("chi_commutators", chi_commutators),
        _run("beta_gamma_commutator", beta_gamma(beta_bos_mode, gamma_bos_mode, lambda m, n: 1 if m + n == 0 else 0)),
        _run("beta_beta_commutator", beta_gamma(beta_bos_mode, beta_bos_mode, lambda m, n: 0)),
        _run("gamma_gamma_commutator", beta_gamma(gamma_bos_mode, gamma_bos_mode, lambda m, n: 0)),
        _run("intertwiner_equivariance", equivariance),
        _run("intertwiner_injective", injective),
        _run("lattice_charge_matches_charge", lattice_charge),
        _run("heisenberg_compatibility", heisenberg),
        _run("hirota_matches_fock_side", hirota_match),
        _run("hirota_antisymmetry", hirota_antisymmetry),
    ]
    return report


# ---------------------------------------------------------------------------
# Hirota residue of a given tau


def hirota_suite(tau: FockVector) -> Report:
    residue = hirota_residue(tau, tau)
    report = Report("hirota", data={"tau": tau.to_json(), "residue": residue.to_json()})
    report.checks.append(Check("residue_vanishes", not residue, actual=residue.to_json() if residue else None))
    return report


def table_lines(report: Report) -> Iterable[str]:
    """Plain-text rendering: a per-degree table for hwv, then one line per check."""
    if report.suite == "hwv":
        yield f"{'degree':>7}  {'dim':>4}  charges"
        for row in report.data["degrees"]:
            yield f"{row['degree']:>7}  {row['dimension']:>4}  {' '.join(map(str, row['charges']))}"
    elif report.suite == "char":
        yield f"{'q^':>6}  {'product':>12}  {'enumerated':>12}"
        for row in report.data["coefficients"]:
            yield f"{row['exponent']:>6}  {str(row['product']):>12}  {str(row['enumerated']):>12}"
    for c in report.checks:
        yield f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
    yield f"{'PASS' if report.passed else 'FAIL'}  {report.suite}"
