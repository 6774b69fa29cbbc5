from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckp.core import FockVector, charge
from ckp.hwv import hwv_basis, is_hwv
from ckp.operators import beta_mode, commutator, gamma_mode, heisenberg_mode
from ckp.symplectic import (
    EXCHANGE_RELATIONS,
    LaurentFamily,
    anticommutator,
    check_exchange,
    exp_coefficient,
    exp_heisenberg_apply,
    hbeta_mode,
    hbeta_top_mode,
    hgamma_mode,
    hgamma_top_mode,
    hwv_virasoro_mode,
    translation,
)

from conftest import fock_vectors
from oracles import naive_exp

VAC = FockVector.vacuum()
X1 = FockVector.of((1, [-1]))


def vec(*idx, coeff=1):
    return FockVector.of((coeff, idx))


def hwv_upto(d2):
    return [v for d in range(d2 + 1) for v in hwv_basis(d).basis]


# ---------------------------------------------------------------------------
# exponentials


def test_exp_examples():
    fam = exp_heisenberg_apply("annihilation", False, VAC, (-5, 5))
    assert fam.exponents() == [0]
    assert fam[0] == VAC
    x = vec(-3, -1)
    inv = exp_heisenberg_apply("annihilation", True, x, (-5, 0))
    assert inv[0] == x
    assert inv[-1] == -VAC
    assert inv.exponents() == [-1, 0]
    up = exp_heisenberg_apply("creation", False, VAC, (0, 3))
    assert up[1] == vec(-3, -1)


def test_laurent_family_window():
    fam = exp_heisenberg_apply("creation", False, VAC, (0, 2))
    assert fam[-4] == FockVector()
    with pytest.raises(KeyError):
        fam[3]
    with pytest.raises(ValueError):
        exp_heisenberg_apply("creation", False, VAC, (2, 1))
    with pytest.raises(ValueError):
        exp_heisenberg_apply("sideways", False, VAC, (0, 1))
    assert isinstance(fam, LaurentFamily) and fam.lower_bound == 0


@given(fock_vectors(6, 3), st.sampled_from([1, -1]), st.booleans())
def test_exp_matches_power_series(v, sign, creation):
    top = 3 if creation else v.max_degree() // 4
    oracle = naive_exp(sign, creation, v, top)
    for k in range(top + 1):
        assert exp_coefficient(sign, creation, k, v) == oracle.get(k, FockVector())


@given(fock_vectors(6, 3), st.booleans())
def test_exp_inverse_pairs(v, creation):
    """``exp(A) exp(-A) = 1`` coefficientwise."""
    top = 3 if creation else v.max_degree() // 4
    for k in range(1, top + 1):
        total = FockVector()
        for j in range(k + 1):
            total = total + exp_coefficient(1, creation, j, exp_coefficient(-1, creation, k - j, v))
        assert total == FockVector()


@pytest.mark.parametrize("rel", EXCHANGE_RELATIONS, ids=lambda r: r.name)
@pytest.mark.parametrize("v", [VAC, X1, vec(-3), vec(-3, -1)], ids=["vac", "x1", "x3", "x31"])
def test_exchange_relations(rel, v):
    passed, where = check_exchange(rel, v, 3)
    assert passed, where


# ---------------------------------------------------------------------------
# the odd fields


def test_creation_conditions():
    assert hbeta_mode(-1, VAC) == vec(-3)
    assert hgamma_mode(-1, VAC) == vec(-1)
    for n in range(0, 5):
        assert hbeta_mode(n, VAC) == FockVector()
        assert hgamma_mode(n, VAC) == FockVector()


@pytest.mark.parametrize("n", range(1, 6))
def test_generation(n):
    b, g = VAC, VAC
    for j in range(1, n + 1):
        b = hbeta_mode(-j, b)
        g = hgamma_mode(-j, g)
    assert b == vec(*[-3] * n)
    assert g == vec(*[-1] * n)


def test_degree_and_charge_law():
    for v in hwv_upto(8):
        (d2,) = v.degrees()
        c = charge(next(iter(v.keys())))
        for n in range(-3, 4):
            b = hbeta_mode(n, v)
            if b:
                assert b.degrees() == {d2 + 4 * c - 4 * n - 1}
                assert {charge(m) for m in b.keys()} == {c - 1}
            g = hgamma_mode(n, v)
            if g:
                assert g.degrees() == {d2 - 4 * c - 4 * n - 3}
                assert {charge(m) for m in g.keys()} == {c + 1}
        assert hbeta_mode(hbeta_top_mode(d2, c) + 1, v) == FockVector()
        assert hgamma_mode(hgamma_top_mode(d2, c) + 1, v) == FockVector()


def test_hwv_preservation():
    for v in hwv_upto(8):
        for n in range(-3, 4):
            for op in (hbeta_mode, hgamma_mode):
                w = op(n, v)
                if w:
                    assert is_hwv(w)


@pytest.mark.parametrize("m", range(-3, 4))
@pytest.mark.parametrize("n", range(-3, 4))
def test_anticommutator_beta_gamma(m, n):
    for v in hwv_upto(6):
        lhs = anticommutator(lambda w: hbeta_mode(m, w), lambda w: hgamma_mode(n, w), v)
        assert lhs == (v * m if m + n == 0 else FockVector())


@pytest.mark.parametrize("m", range(-3, 4))
@pytest.mark.parametrize("n", range(-3, 4))
def test_anticommutator_gamma_gamma(m, n):
    for v in hwv_upto(4):
        assert anticommutator(lambda w: hgamma_mode(m, w), lambda w: hgamma_mode(n, w), v) == FockVector()


@pytest.mark.parametrize("m, n", [(a, b) for a in range(-2, 3) for b in range(a, 3)])
def test_anticommutator_beta_beta(m, n):
    for v in hwv_upto(3):
        assert anticommutator(lambda w: hbeta_mode(m, w), lambda w: hbeta_mode(n, w), v) == FockVector()


def test_charge_shift():
    for v in hwv_upto(6):
        for n in range(-3, 4):
            h0 = lambda w: heisenberg_mode(0, w)
            assert commutator(h0, lambda w: hbeta_mode(n, w), v) == -hbeta_mode(n, v)
            assert commutator(h0, lambda w: hgamma_mode(n, w), v) == hgamma_mode(n, v)


def test_heisenberg_ladder():
    from ckp.hwv import monomials_up_to

    for m in monomials_up_to(8):
        v = FockVector.basis(m)
        for n in range(-2, 3):
            for k in range(-2, 3):
                h = lambda w: heisenberg_mode(n, w)
                assert commutator(h, lambda w: beta_mode(k, w), v) == -beta_mode(k - n, v)
                assert commutator(h, lambda w: gamma_mode(k, w), v) == gamma_mode(k - n, v)


# ---------------------------------------------------------------------------
# Virasoro structure on the highest weight space


def test_virasoro_on_vacuum():
    for n in range(-1, 4):
        assert hwv_virasoro_mode(n, VAC) == FockVector()
    assert translation(VAC) == FockVector()


def test_central_term():
    lhs = hwv_virasoro_mode(2, hwv_virasoro_mode(-2, VAC)) - hwv_virasoro_mode(-2, hwv_virasoro_mode(2, VAC))
    assert lhs - hwv_virasoro_mode(0, VAC) * 4 == -VAC


def test_refuses_non_hwv():
    with pytest.raises(ValueError):
        hwv_virasoro_mode(0, vec(-3, -1))
    assert hwv_virasoro_mode(0, FockVector()) == FockVector()


def test_l0_eigenvalue():
    """On a hwv of doubled degree d2 and charge c, L_0 acts by (d2 + 2c^2 + c) / 4."""
    for v in hwv_upto(10):
        (d2,) = v.degrees()
        c = charge(next(iter(v.keys())))
        assert hwv_virasoro_mode(0, v) == v * Fraction(d2 + 2 * c * c + c, 4)


@pytest.mark.parametrize("v", [VAC, X1, vec(-1, -1), vec(-3), vec(-3, -1, -1) + vec(-5, coeff=2)], ids=str)
def test_translation_lowers_mode_index(v):
    """[T, H_(n)] = -n H_(n-1), the mode form of [T, H(u)] = dH/du with H(u) = sum H_(n) u^(-n-1)."""
    for n in range(-3, 3):
        for op in (hbeta_mode, hgamma_mode):
            lhs = commutator(translation, lambda w: op(n, w), v)
            assert lhs == op(n - 1, v) * -n


def test_virasoro_closure_small():
    for v in hwv_upto(4):
        for m, n in [(1, -1), (2, -1), (1, -2), (0, -1), (1, 0)]:
            lhs = commutator(lambda w: hwv_virasoro_mode(m, w), lambda w: hwv_virasoro_mode(n, w), v)
            central = v * Fraction(-2 * (m**3 - m), 12) if m + n == 0 else FockVector()
            assert lhs == hwv_virasoro_mode(m + n, v) * (m - n) + central
