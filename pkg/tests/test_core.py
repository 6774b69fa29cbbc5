import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckp.core import (
    FockVector,
    apply_mode,
    charge,
    degree,
    fock_from_json,
    fock_to_json,
    format_half,
    monomial,
    normal_ordered_pair,
    parse_half,
    sign_for,
)
from ckp.hwv import monomials_up_to

from conftest import fock_vectors, odd_indices

VAC = FockVector.vacuum()


def vec(*idx, coeff=1):
    return FockVector.of((coeff, idx))


@pytest.mark.parametrize(
    "idx, expected",
    [((-1,), 1), ((-3,), -1), ((), 0), ((-3, -1), 0), ((-5,), 1), ((-7, -1, -1), 1)],
)
def test_charge(idx, expected):
    assert charge(monomial(idx)) == expected


@pytest.mark.parametrize("idx, d2", [((), 0), ((-5,), 5), ((-3, -3, -1, -1), 8)])
def test_degree(idx, d2):
    assert degree(monomial(idx)) == d2


def test_apply_mode_examples():
    assert apply_mode(-1, VAC) == vec(-1)
    assert apply_mode(1, vec(-1, -1)) == vec(-1, coeff=2)
    assert apply_mode(3, vec(-3)) == -VAC
    assert apply_mode(5, vec(-3)) == FockVector()


def test_normal_ordered_pair_examples():
    assert normal_ordered_pair(1, -1, VAC) == FockVector()
    assert normal_ordered_pair(-1, 1, vec(-1)) == vec(-1)
    assert normal_ordered_pair(-1, -3, VAC) == vec(-3, -1)


def test_even_index_rejected():
    with pytest.raises(ValueError):
        apply_mode(2, VAC)
    with pytest.raises(ValueError):
        monomial([-2])
    with pytest.raises(ValueError):
        monomial([3])


def test_sign_for():
    assert [sign_for(a2) for a2 in (1, 3, 5, 7, -1, -3)] == [1, -1, 1, -1, -1, 1]


BASIS_6 = monomials_up_to(12)


def test_commutator_law_exhaustive():
    """[chi_a, chi_b] = (-1)^(a-1/2) delta_{a,-b} on every monomial of degree <= 6."""
    idx = [a2 for a2 in range(-11, 12) if a2 % 2]
    for m in BASIS_6:
        v = FockVector.basis(m)
        for a2 in idx:
            for b2 in idx:
                lhs = apply_mode(a2, apply_mode(b2, v)) - apply_mode(b2, apply_mode(a2, v))
                expected = v * sign_for(a2) if a2 == -b2 else FockVector()
                assert lhs == expected, (a2, b2, m)


def test_grading_shifts():
    for m in BASIS_6:
        v = FockVector.basis(m)
        for a2 in range(-11, 12, 2):
            w = apply_mode(a2, v)
            for target in w.keys():
                assert degree(target) == degree(m) - a2
                assert charge(target) - charge(m) == (1 if a2 % 4 == 3 else -1)


def test_normal_order_symmetric():
    idx = [a2 for a2 in range(-7, 8) if a2 % 2]
    for m in monomials_up_to(8):
        v = FockVector.basis(m)
        for a2 in idx:
            for b2 in idx:
                assert normal_ordered_pair(a2, b2, v) == normal_ordered_pair(b2, a2, v)


@given(st.lists(odd_indices(11).map(lambda a: -abs(a)), max_size=8))
def test_canonical_form_is_order_independent(idx):
    m = monomial(idx)
    assert monomial(list(reversed(idx))) == m
    assert monomial(dict(m)) == m
    assert all(mult >= 1 for _, mult in m)
    assert [a for a, _ in m] == sorted({a for a, _ in m})


@given(fock_vectors(8), fock_vectors(8), fock_vectors(8))
def test_vector_arithmetic(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert u - u == FockVector()
    assert (u * Fraction(3, 7)) * 7 == u * 3
    assert all(c != 0 for _, c in (u - v).items())


@given(fock_vectors(10))
def test_json_round_trip(v):
    data = fock_to_json(v)
    assert fock_from_json(json.dumps(data)) == v
    assert all(isinstance(c, str) for c, _ in data)


def test_json_format():
    v = FockVector.of((Fraction(-1, 2), [-3, -1]), (2, [-5]))
    assert fock_to_json(v) == [["-1/2", [[-3, 1], [-1, 1]]], ["2", [[-5, 1]]]]


@pytest.mark.parametrize("text, d2", [("9/2", 9), ("3", 6), ("13/2", 13), ("-1/2", -1), ("0", 0), (" 4 / 2 ", 4)])
def test_parse_half(text, d2):
    assert parse_half(text) == d2


@pytest.mark.parametrize("text", ["4.5", "1/3", "x", "", "1/0", "9//2"])
def test_parse_half_rejects(text):
    with pytest.raises(ValueError):
        parse_half(text)


@given(st.integers(-200, 200))
def test_format_parse_inverse(d2):
    assert parse_half(format_half(d2)) == d2
