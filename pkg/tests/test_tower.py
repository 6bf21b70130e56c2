import random
from fractions import Fraction

import pytest

from dihedral_tower import dihedral, hnn, verifier
from dihedral_tower.affine import AffineMap
from dihedral_tower.hnn import J_WORD, ONE, Word
from dihedral_tower.tower import (
    SessionFormatError,
    T_WORD,
    TowerError,
    TowerState,
    conjugate_to_j,
    conjugator_from_t,
    ensure_letter,
    session_load,
    session_save,
    transporter,
)


def test_ensure_letter_idempotent(empty):
    S = empty
    tz = S.parse("z^-1 t z")
    assert ensure_letter(S, tz) == 1
    assert ensure_letter(S, tz) == 1
    # the j-conjugate generates the same dihedral group
    assert ensure_letter(S, S.mul(J_WORD, tz, J_WORD)) == 1
    assert len(S) == 1
    assert S.eq(S.conj(T_WORD, Word.letter(1)), tz)
    assert S.eq(S.conj(J_WORD, Word.letter(1)), J_WORD)


def test_ensure_letter_rejections(empty):
    S = empty
    with pytest.raises(TowerError):
        ensure_letter(S, S.parse("aff(-1,3)"))
    with pytest.raises(TowerError):
        ensure_letter(S, J_WORD)
    with pytest.raises(TowerError):
        ensure_letter(S, S.parse("z"))
    tz = S.parse("z^-1 t z")
    non_minimal = S.mul(J_WORD, hnn.power(S, S.mul(J_WORD, tz), 3))
    with pytest.raises(TowerError):
        ensure_letter(S, non_minimal)


def test_level_two_letter(one_letter):
    S = one_letter
    # t conjugated by f1 z collapses into G0: f1^-1 t f1 = t^z
    assert S.conj(T_WORD, S.parse("f{1} z")).is_base
    # t^(z f1) is v1^f1 = t^(f1 f1), already conjugate to t inside Cen(j)
    with pytest.raises(TowerError):
        ensure_letter(S, S.conj(T_WORD, S.parse("z f{1}")))
    v2 = S.conj(T_WORD, S.parse("z f{1} z"))
    assert ensure_letter(S, v2) == 2
    assert S.level(2) == 2


def test_conjugator_from_t_examples(empty):
    S = empty
    a = conjugator_from_t(S, S.parse("aff(-1,3)"))
    assert a == Word.base((AffineMap(Fraction(2, 3), 0),))
    tz = S.parse("z^-1 t z")
    assert conjugator_from_t(S, tz) == S.parse("f{1}")
    s = S.mul(J_WORD, hnn.power(S, S.mul(J_WORD, tz), 2))
    a = conjugator_from_t(S, s)
    assert a == S.parse("aff(1/2,0) f{1}")
    assert S.eq(S.conj(T_WORD, a), s)
    assert len(S) == 1
    with pytest.raises(ValueError):
        conjugator_from_t(S, J_WORD)


def test_conjugate_to_j_examples(empty):
    S = empty
    assert conjugate_to_j(S, J_WORD) == ONE
    assert conjugate_to_j(S, T_WORD) == Word.base((AffineMap(1, 1),))
    tz = S.parse("z^-1 t z")
    h = conjugate_to_j(S, tz)
    assert S.eq(S.conj(tz, h), J_WORD)
    assert S.eq(h, S.parse("z^-1 aff(1,1)"))


def test_transporter_examples(empty):
    S = empty
    t, j = T_WORD, J_WORD
    assert transporter(S, (j, t), (j, t)) == ONE
    assert transporter(S, (j, t), (j, S.parse("z^-1 t z"))) == S.parse("f{1}")
    g = transporter(S, (t, j), (j, t))
    assert S.eq(S.conj(t, g), j) and S.eq(S.conj(j, g), t)
    jt = S.mul(j, t)
    assert S.eq(S.conj(jt, g), S.inv(jt))
    with pytest.raises(TowerError):
        transporter(S, (j, j), (j, t))
    with pytest.raises(TowerError):
        transporter(S, (j, S.parse("z")), (j, t))


def test_transporter_random_pairs(primed):
    S = primed
    samples = verifier.sample_involutions(verifier.SuiteConfig(seed=5, max_f_length=1), S, count=40)
    rng = random.Random(2)
    for _ in range(10):
        r1, r2, s1, s2 = rng.sample(samples, 4)
        if S.eq(r1, r2) or S.eq(s1, s2):
            continue
        g = transporter(S, (r1, r2), (s1, s2))
        assert S.eq(S.conj(r1, g), s1) and S.eq(S.conj(r2, g), s2)


def test_registry_monotone(empty):
    S = empty
    pair = (J_WORD, S.parse("z t z^-1"))
    transporter(S, (J_WORD, T_WORD), pair)
    n = len(S)
    transporter(S, (J_WORD, T_WORD), pair)
    assert len(S) == n


def test_phi_homomorphism(primed):
    S = primed
    for letter in primed.letters:
        jv = S.mul(J_WORD, letter.key)
        for n in range(-5, 6):
            lhs = S.conj(hnn.power(S, S.parse("j t"), n), Word.letter(letter.id))
            assert S.eq(lhs, hnn.power(S, jv, n))


def test_conjugators_commute_with_j(primed):
    S = primed
    for s in verifier.sample_involutions(verifier.SuiteConfig(seed=3), S, count=40):
        if S.eq(s, J_WORD):
            continue
        a = conjugator_from_t(S, s)
        assert dihedral.commutes(S, a, J_WORD)
        assert S.eq(S.conj(T_WORD, a), s)


def test_session_round_trip(empty):
    S = empty
    doc = session_save(S)
    assert session_load(doc).letters == []
    ensure_letter(S, S.parse("z^-1 t z"))
    ensure_letter(S, S.conj(T_WORD, S.parse("z f{1} z")))
    doc = session_save(S)
    S2 = session_load(doc)
    assert [(l.id, l.level) for l in S2.letters] == [(1, 1), (2, 2)]
    assert ensure_letter(S2, S2.parse("z^-1 t z")) == 1
    assert session_save(S2) == doc


@pytest.mark.parametrize(
    "doc",
    [
        "dihedral-tower v1\nletter 1 level 1 key z^-1 t z\nletter 2 level 1 key z^-1 t z\n",
        "dihedral-tower v1\nletter 1 level 2 key z^-1 t z\n",
        "dihedral-tower v1\nletter 2 level 1 key z^-1 t z\n",
        "dihedral-tower v0\n",
        "dihedral-tower v1\nletter 1 level 1 key aff(-1,3)\n",
        "dihedral-tower v1\nletter one\n",
    ],
)
def test_session_rejects_bad_documents(doc):
    with pytest.raises(SessionFormatError):
        session_load(doc)
