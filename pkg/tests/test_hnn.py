import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from dihedral_tower import hnn
from dihedral_tower.affine import T, AffineMap
from dihedral_tower.freeprod import INFINITE
from dihedral_tower.hnn import ONE, UnknownLetterError, Word, word_invert
from dihedral_tower.tower import TowerState
from dihedral_tower import verifier

from conftest import tower_words

PRIMED = TowerState()
verifier.prime_tower(PRIMED)
relaxed = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_transport_of_translation(one_letter):
    S = one_letter
    w = S.parse("f{1}^-1 (j t)^3 f{1}")
    assert S.eq(S.reduce(w), S.parse("(j z^-1 t z)^3"))
    assert S.reduce(w).is_base


def test_irreducible_and_empty(one_letter):
    S = one_letter
    w = S.parse("f{1}^-1 z f{1}")
    assert S.reduce(w) == w
    assert S.reduce(ONE) == ONE


def test_f_length_examples(one_letter):
    S = one_letter
    assert hnn.f_length(S, S.parse("j z t z^-2")) == 0
    assert hnn.f_length(S, S.parse("f{1}^-1 j t f{1}")) == 0
    assert hnn.f_length(S, S.parse("f{1}^-1 z f{1}")) == 2


def test_equal_examples(one_letter):
    S = one_letter
    w = S.parse("z f{1} t")
    assert S.eq(w, w)
    assert S.eq(S.parse("f{1}^-1 (j t)^2 f{1}"), S.parse("(j z^-1 t z)^2"))
    assert not S.eq(S.parse("f{1}"), S.parse("f{1} j t"))


def test_multiply_invert_conjugate(one_letter):
    S = one_letter
    u = S.parse("f{1} t z f{1}^-1 z")
    assert S.mul(u, S.inv(u)) == ONE
    assert S.inv(S.parse("f{1} t")) == S.parse("t f{1}^-1")
    assert S.eq(S.conj(Word.base((T,)), S.parse("f{1}")), S.key(1))


def test_cyclically_reduce_examples(one_letter):
    S = one_letter
    x, core = hnn.cyclically_reduce(S, S.parse("t f{1} t"))
    assert core == S.parse("f{1}") and S.eq(x, S.parse("t"))
    fp = S.parse("z j t z^-1")
    x, core = hnn.cyclically_reduce(S, fp)
    assert core == S.parse("j t") and S.eq(S.mul(x, core, S.inv(x)), fp)
    w = S.parse("f{1}^-1 z f{1} j f{1}^-1 z^-1 f{1}")
    x, core = hnn.cyclically_reduce(S, w)
    assert hnn.f_length(S, core) < hnn.f_length(S, w)
    assert S.eq(S.mul(x, core, S.inv(x)), w)


def test_order_class_examples(one_letter):
    S = one_letter
    assert hnn.order_class(S, S.parse("f{1}")) == INFINITE
    assert hnn.order_class(S, S.conj(S.parse("t"), S.parse("f{1} z"))) == 2
    assert hnn.order_class(S, ONE) == 1


def test_power_examples(one_letter):
    S = one_letter
    w = S.parse("f{1} z t")
    assert hnn.power(S, w, 1) == S.reduce(w)
    assert hnn.power(S, S.parse("f{1}"), 3) == S.parse("f{1} f{1} f{1}")
    assert hnn.power(S, S.parse("j t"), 5) == Word.base((AffineMap(1, -10),))


def test_power_solve_examples(one_letter):
    S = one_letter
    h = S.parse("f{1} z")
    assert hnn.power_solve(S, hnn.power(S, h, 4), h) == 4
    assert hnn.power_solve(S, S.parse("f{1}"), h) is None
    assert hnn.power_solve(S, ONE, h) == 0
    with pytest.raises(ValueError):
        hnn.power_solve(S, h, ONE)


def test_involution_core_examples(one_letter):
    S = one_letter
    assert hnn.involution_core(S, S.parse("t")) == (ONE, (T,))
    x, c = hnn.involution_core(S, S.parse("z^-1 t z"))
    assert c == (T,) and S.eq(S.mul(x, Word.base(c), S.inv(x)), S.parse("z^-1 t z"))
    v1 = S.conj(S.parse("t"), S.parse("f{1}"))
    x, c = hnn.involution_core(S, v1)
    assert c[0].a == -1 and S.eq(S.mul(x, Word.base(c), S.inv(x)), v1)
    with pytest.raises(ValueError):
        hnn.involution_core(S, S.parse("f{1}"))


def test_unknown_letter_rejected(empty):
    with pytest.raises(UnknownLetterError):
        empty.parse("f{1}")
    with pytest.raises(UnknownLetterError):
        empty.reduce(Word.letter(3))


@relaxed
@given(tower_words())
def test_reduce_is_fixpoint_and_equal(w):
    r = PRIMED.reduce(w)
    assert PRIMED.reduce(r) == r
    assert PRIMED.eq(r, w)
    if r.letters:
        assert not PRIMED.eq(r, ONE)


@relaxed
@given(tower_words(), tower_words())
def test_cancellation_parity(u, v):
    lu, lv = hnn.f_length(PRIMED, u), hnn.f_length(PRIMED, v)
    luv = hnn.f_length(PRIMED, PRIMED.mul(u, v))
    assert luv <= lu + lv and (luv - lu - lv) % 2 == 0


@relaxed
@given(tower_words(), st.integers(-3, 3))
def test_power_length(w, n):
    _, core = hnn.cyclically_reduce(PRIMED, w)
    if core.letters:
        p = hnn.power(PRIMED, core, n)
        assert hnn.top_length(PRIMED, p)[1] == abs(n) * hnn.top_length(PRIMED, core)[1]


@relaxed
@given(tower_words(max_base=3))
def test_order_class_brute_force(w):
    cls = hnn.order_class(PRIMED, w)
    torsion = [k for k in range(1, 9) if hnn.is_identity(PRIMED, hnn.power(PRIMED, w, k))]
    if torsion:
        assert cls == torsion[0] and cls in (1, 2)
    else:
        assert cls == INFINITE


@relaxed
@given(tower_words())
def test_cyclic_core_is_conjugate(w):
    x, core = hnn.cyclically_reduce(PRIMED, w)
    assert PRIMED.eq(PRIMED.mul(x, core, word_invert(x)), w)
    assert hnn.level_profile(PRIMED, core) <= hnn.level_profile(PRIMED, PRIMED.reduce(w))
