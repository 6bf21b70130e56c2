from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dihedral_tower.affine import (
    IDENTITY,
    J,
    T,
    T_PRIME,
    AffineMap,
    affine_power,
    as_rational,
    compose,
    conjugate,
    discrete_log,
    fixed_point,
    invert,
    nth_root_translation,
    solve_A_conjugation,
)

from conftest import affine_maps, nonzero_rationals, small_rationals


def test_compose_examples():
    assert compose(IDENTITY, AffineMap(5, 7)) == AffineMap(5, 7)
    assert compose(J, T) == AffineMap(1, -2)
    # j^{t'} = t
    assert compose(T_PRIME, compose(J, T_PRIME)) == T
    assert conjugate(J, T_PRIME) == T


def test_invert_examples():
    assert invert(IDENTITY) == IDENTITY
    assert invert(T) == T
    assert invert(AffineMap(2, 3)) == AffineMap(Fraction(1, 2), Fraction(-3, 2))


def test_power_examples():
    assert affine_power(AffineMap(1, -2), 3) == AffineMap(1, -6)
    assert affine_power(AffineMap(3, 1), 0) == IDENTITY
    assert affine_power(T, 2) == IDENTITY


def test_nth_root_translation_examples():
    assert nth_root_translation(AffineMap(1, -2), 1) == T
    s = nth_root_translation(AffineMap(1, -2), 2)
    assert s == AffineMap(-1, 1)
    assert affine_power(compose(J, s), 2) == AffineMap(1, -2)
    assert nth_root_translation(AffineMap(1, -2), 3) == AffineMap(-1, Fraction(2, 3))


def test_solve_A_conjugation_examples():
    assert solve_A_conjugation(T, T) == IDENTITY
    # t^{(k,0)} = (-1, 2/k) under g^h = h^-1 g h with composition products
    a = solve_A_conjugation(T, AffineMap(-1, -4))
    assert a == AffineMap(Fraction(-1, 2), 0)
    assert conjugate(T, a) == AffineMap(-1, -4)
    assert solve_A_conjugation(T, AffineMap(-1, Fraction(2, 3))) == AffineMap(3, 0)


def test_solve_A_conjugation_rejects_j():
    with pytest.raises(ValueError):
        solve_A_conjugation(T, J)


def test_fixed_point_examples():
    assert fixed_point(J) == 0
    assert fixed_point(T) == 1
    assert fixed_point(T_PRIME) == Fraction(1, 2)
    with pytest.raises(ValueError):
        fixed_point(AffineMap(2, 0))


def test_zero_slope_and_floats_rejected():
    with pytest.raises(ValueError):
        AffineMap(0, 1)
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(affine_maps)
def test_inverse_laws(g):
    assert compose(g, invert(g)) == IDENTITY
    assert invert(invert(g)) == g


@given(affine_maps, affine_maps, affine_maps)
def test_associative(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@given(affine_maps, st.integers(-20, 20))
def test_power_matches_iteration(g, n):
    base = g if n >= 0 else invert(g)
    acc = IDENTITY
    for _ in range(abs(n)):
        acc = compose(acc, base)
    assert affine_power(g, n) == acc


@given(small_rationals)
def test_torsion_dichotomy(b):
    assert affine_power(AffineMap(-1, b), 2) == IDENTITY
    if b:
        assert all(not affine_power(AffineMap(1, b), n).is_identity for n in range(1, 101))


@given(nonzero_rationals, st.integers(1, 12), small_rationals)
def test_root_uniqueness(c, n, b):
    s = nth_root_translation(AffineMap(1, c), n)
    assert affine_power(compose(J, s), n) == AffineMap(1, c)
    other = AffineMap(-1, b)
    if affine_power(compose(J, other), n) == AffineMap(1, c):
        assert other == s


@given(small_rationals, small_rationals)
def test_affine_pairs_sharply_transitive(b1, b2):
    # (j, t) -> (j, (-1,b)) through the scaling, unique among affine maps fixing j
    if b1 == 0 or b2 == 0:
        return
    s1, s2 = AffineMap(-1, b1), AffineMap(-1, b2)
    a = solve_A_conjugation(s1, s2)
    assert conjugate(s1, a) == s2 and conjugate(J, a) == J
    for lam in (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)):
        for mu in (Fraction(0), Fraction(1), Fraction(-1, 2)):
            g = AffineMap(lam, mu)
            if conjugate(J, g) == J and conjugate(s1, g) == s2:
                assert g == a


@given(st.fractions(min_value=-5, max_value=5, max_denominator=3), st.integers(-12, 12))
def test_discrete_log_round_trip(base, n):
    if base in (0, 1, -1):
        return
    m = discrete_log(base, base**n)
    assert m is not None and base**m == base**n
