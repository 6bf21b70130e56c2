"""Randomized checks of the six axioms and the supporting lemmas.

Each suite draws bounded samples from the current tower fragment and
reports failures with the seed, the bounds and the offending words.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import dihedral, hnn
from .affine import J, T, T_PRIME, AffineMap
from .freeprod import INFINITE, normalize
from .hnn import J_WORD, ONE, Word, concat, word_invert
from .tower import (
    T_WORD,
    TowerState,
    conjugate_to_j,
    conjugator_from_t,
    ensure_letter,
    transporter,
)
from .words import format_word

JT = Word.base((AffineMap(1, -2),))
T_PRIME_WORD = Word.base((T_PRIME,))

_SLOPES = [Fraction(x) for x in ("1", "-1", "2", "-2", "1/2", "3", "-1/3")]
_OFFSETS = [Fraction(x) for x in ("0", "1", "-1", "2", "1/2", "-3/2", "3")]
_INVOLUTION_OFFSETS = [Fraction(x) for x in ("0", "2", "1", "-1", "3", "1/2", "-4", "2/3", "5")]

# Affine syllables of the exhaustive scans.
UNIVERSE_AFFINE = (J, T, AffineMap(1, 1), AffineMap(2, 0), AffineMap(1, -2))
UNIVERSE_Z = (1, -1)


@dataclass
class SuiteConfig:
    seed: int = 1
    max_base_syllables: int = 4
    max_f_length: int = 2
    max_exponent: int = 5
    sample_count: int = 200

    def __post_init__(self):
        for name in ("max_base_syllables", "max_exponent", "sample_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_f_length < 0:
            raise ValueError("max_f_length must be nonnegative")


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str, *words: Word) -> bool:
        self.cases += 1
        if not ok:
            text = "; ".join(format_word(w) for w in words)
            self.failures.append(f"{message}: {text}" if words else message)
        return ok


# sampling


def random_affine(rng: random.Random) -> AffineMap:
    while True:
        g = AffineMap(rng.choice(_SLOPES), rng.choice(_OFFSETS))
        if not g.is_identity:
            return g


def random_fp_word(rng: random.Random, length: int) -> tuple:
    out = []
    use_z = rng.random() < 0.5
    for _ in range(length):
        out.append(rng.choice((1, -1, 2, -2)) if use_z else random_affine(rng))
        use_z = not use_z
    return normalize(out)


def random_word(rng: random.Random, state: TowerState, max_base: int, max_f: int) -> Word:
    nletters = rng.randint(0, max_f) if len(state) else 0
    nbase = rng.randint(0, max_base)
    cuts = sorted(rng.randint(0, nbase) for _ in range(nletters))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [nbase])]
    parts = [random_fp_word(rng, n) for n in sizes]
    letters = [(rng.randint(1, len(state)), rng.choice((1, -1))) for _ in range(nletters)]
    return state.reduce(Word(tuple(parts), tuple(letters)))


def random_base_involution(rng: random.Random) -> Word:
    return Word.base((AffineMap(-1, rng.choice(_INVOLUTION_OFFSETS)),))


def sample_involutions(config: SuiteConfig, state: TowerState, count: int | None = None) -> list:
    """Involutions w·c·w^-1; deterministic in the seed."""
    rng = random.Random(config.seed)
    out = []
    for _ in range(config.sample_count if count is None else count):
        w = random_word(rng, state, config.max_base_syllables, config.max_f_length)
        c = random_base_involution(rng)
        out.append(state.mul(w, c, word_invert(w)))
    return out


def prime_tower(state: TowerState) -> None:
    """Make sure the fragment has a level-1 and a level-2 letter to sample from."""
    v1 = state.parse("z^-1 t z")
    ident = ensure_letter(state, v1)
    ensure_letter(state, state.conj(T_WORD, concat(Word.base((1,)), Word.letter(ident), Word.base((1,)))))


def bounded_words(state: TowerState, max_f: int, max_base: int, letters: Iterable[int] | None = None):
    """Every word with at most max_f letters and max_base syllables in total."""
    letters = list(range(1, len(state) + 1)) if letters is None else list(letters)
    syll = list(UNIVERSE_AFFINE) + list(UNIVERSE_Z)

    def fp_words(n):
        for seq in itertools.product(syll, repeat=n):
            if all((isinstance(a, int)) != (isinstance(b, int)) for a, b in zip(seq, seq[1:])):
                yield tuple(seq)

    fp_by_len = {n: list(fp_words(n)) for n in range(max_base + 1)}
    seen = set()
    for nf in range(0, max_f + 1 if letters else 1):
        for lets in itertools.product([(i, s) for i in letters for s in (1, -1)], repeat=nf):
            for sizes in itertools.product(range(max_base + 1), repeat=nf + 1):
                if sum(sizes) > max_base:
                    continue
                for parts in itertools.product(*(fp_by_len[n] for n in sizes)):
                    w = state.reduce(Word(tuple(parts), tuple(lets)))
                    if w not in seen:
                        seen.add(w)
                        yield w


def _not_j(state, xs):
    return [s for s in xs if not state.eq(s, J_WORD)]


def _commutes(state, a, b):
    return dihedral.commutes(state, a, b)


def _in_A(state, a):
    return _commutes(state, a, J_WORD)


# suites

SUITES: dict[str, Callable] = {}


def suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


@suite("condition1")
def _condition1(config, state, rep):
    for s in sample_involutions(config, state):
        h = conjugate_to_j(state, s)
        rep.check(state.eq(state.conj(s, h), J_WORD), "s^h != j", s, h)


@suite("condition2")
def _condition2(config, state, rep):
    samples = sample_involutions(config, state)
    pairs = list(zip(samples, samples[1:])) + [(s, J_WORD) for s in samples[:20]] + [(s, T_WORD) for s in samples[:20]]
    for r, s in pairs:
        if state.eq(r, s):
            continue
        rep.check(hnn.order_class(state, state.mul(r, s)) == INFINITE, "rs has finite order", r, s)


@suite("condition3")
def _condition3(config, state, rep):
    samples = _not_j(state, sample_involutions(config, state))
    samples += [Word.base((AffineMap(-1, Fraction(2, m)),)) for m in range(1, config.max_exponent + 2)]
    for n in range(1, config.max_exponent + 1):
        s = dihedral.nth_root_involution(state, JT, n)
        ok = s is not None and state.eq(hnn.power(state, state.mul(J_WORD, s), n), JT)
        rep.check(ok, f"no root of order {n}", JT)
        rep.check(state.eq(s, Word.base((AffineMap(-1, Fraction(2, n)),))), f"root of order {n} is not aff(-1,2/{n})", s)
        for other in samples:
            if state.eq(hnn.power(state, state.mul(J_WORD, other), n), JT):
                rep.check(state.eq(other, s), f"second root of order {n}", other, s)


def _class_of_t_samples(config, state):
    rng = random.Random(config.seed + 4)
    extra = []
    for _ in range(config.sample_count // 4):
        b = rng.choice(_INVOLUTION_OFFSETS[1:]) * rng.choice((1, -1, 3, Fraction(1, 2)))
        w = Word.base(random_fp_word(rng, 1)) if rng.random() < 0.5 else ONE
        s = state.conj(Word.base((AffineMap(-1, b),)), w if w.parts[0] and not isinstance(w.parts[0][0], int) else ONE)
        extra.append(s)
    return extra


@suite("condition4")
def _condition4(config, state, rep):
    candidates = _not_j(state, sample_involutions(config, state) + _class_of_t_samples(config, state))
    for s in candidates:
        if not isinstance(dihedral.equiv_key(state, s), dihedral.ClassOfT):
            continue
        a = conjugator_from_t(state, s)
        rep.check(state.eq(state.conj(T_WORD, a), s) and _in_A(state, a), "t^a != s or a not in A", s, a)
    rep.notes.append(f"{rep.cases} involutions in t^A")


def _centralizer_universe(state, max_base=2):
    return list(bounded_words(state, 1, max_base))


def check_centralizer(state, s, universe, rep):
    js = state.mul(J_WORD, s)
    desc = dihedral.centralizer(state, s)
    probes = list(universe)
    if isinstance(desc, dihedral.Cyclic):
        probes += [hnn.power(state, desc.generator, n) for n in (-2, -1, 1, 2, 3)]
        rep.check(_commutes(state, desc.generator, js), "generator does not commute with js", s, desc.generator)
    probes += [hnn.power(state, js, n) for n in (-1, 1, 2)]
    for g in probes:
        rep.check(
            _commutes(state, g, js) == dihedral.centralizer_contains(state, desc, g),
            "commuting set differs from centralizer description",
            s,
            g,
        )


@suite("condition5")
def _condition5(config, state, rep):
    universe = _centralizer_universe(state, max_base=1)
    samples = _not_j(state, sample_involutions(config, state, count=max(1, config.sample_count // 20)))
    for s in samples + [T_WORD]:
        check_centralizer(state, s, universe, rep)


@suite("condition6")
def _condition6(config, state, rep):
    for s in _not_j(state, sample_involutions(config, state)):
        key = dihedral.equiv_key(state, s)
        if isinstance(key, dihedral.ClassOfT):
            continue
        u = key.u
        rep.check(dihedral.is_minimal(state, u), "key is not minimal", s, u)
        ju = state.mul(J_WORD, u)
        rep.check(hnn.power_solve(state, state.mul(J_WORD, s), ju) is not None, "js not a power of ju", s, u)
        for m in (2, -1, 3):
            other = state.mul(hnn.power(state, ju, m), J_WORD)
            key2 = dihedral.equiv_key(state, other)
            rep.check(dihedral.same_key(state, key, key2), "equivalent involutions with different keys", s, other)


def _random_A(rng, state):
    pieces = []
    for _ in range(rng.randint(1, 3)):
        if len(state) and rng.random() < 0.5:
            pieces.append(Word.letter(rng.randint(1, len(state)), rng.choice((1, -1))))
        else:
            pieces.append(Word.affine(AffineMap(rng.choice(_SLOPES[1:]), 0)))
    return state.mul(*pieces)


@suite("lemma-malnormal")
def _lemma_malnormal(config, state, rep):
    rng = random.Random(config.seed + 1)
    n = max(1, config.sample_count // 4)
    for _ in range(n):
        a = _random_A(rng, state)
        g = random_word(rng, state, config.max_base_syllables, config.max_f_length)
        if a.is_trivial or _in_A(state, g):
            continue
        rep.check(not _in_A(state, state.conj(a, g)), "A ∩ A^g contains a^g", a, g)
    for _ in range(n):
        g = random_word(rng, state, config.max_base_syllables, config.max_f_length)
        for k in range(2, config.max_exponent + 1):
            gk = hnn.power(state, g, k)
            if _in_A(state, gk):
                rep.check(_in_A(state, g) or gk.is_trivial, f"g^{k} in A but g not in A", g)
    for r in _not_j(state, sample_involutions(config, state, count=n)):
        if _in_A(state, r):
            continue
        a, b = _random_A(rng, state), _random_A(rng, state)
        for left, right in ((a, state.inv(a)), (a, b)):
            s = state.mul(left, r, right)
            if hnn.order_class(state, s) == 2 and not _in_A(state, s):
                rep.check(state.mul(left, right).is_trivial, "a r b involution with ab != 1", left, r, right)


@suite("lemma-translation-product")
def _lemma_translation_product(config, state, rep):
    rng = random.Random(config.seed + 2)
    samples = _not_j(state, sample_involutions(config, state, count=max(2, config.sample_count // 4)))
    for s3, other in zip(samples, samples[1:]):
        key3 = dihedral.equiv_key(state, s3)
        js3 = state.mul(J_WORD, s3)
        if isinstance(key3, dihedral.ClassOfT):
            gen = js3
        else:
            gen = state.mul(J_WORD, key3.u)
        s1 = state.mul(hnn.power(state, gen, rng.choice((-2, -1, 1, 2, 3))), J_WORD)
        for first in (s1, other):
            s2 = state.mul(first, js3)
            if state.eq(first, J_WORD) or state.eq(s2, J_WORD) or s2.is_trivial:
                continue
            if hnn.order_class(state, s2) != 2:
                continue
            ok = dihedral.equivalent(state, first, s3) and dihedral.equivalent(state, s2, s3)
            rep.check(ok, "s1 s2 = j s3 but keys differ", first, s2, s3)


@suite("lemma-pair-conjugation")
def _lemma_pair_conjugation(config, state, rep):
    rng = random.Random(config.seed + 3)
    for _ in range(max(1, config.sample_count // 10)):
        b1 = rng.choice(_INVOLUTION_OFFSETS) + rng.choice((0, Fraction(1, 3)))
        b2 = b1 - 2 * rng.choice((1, -1, 2, -3))
        w = random_word(rng, state, 2, min(1, config.max_f_length))
        s1 = state.conj(Word.base((AffineMap(-1, b1),)), w)
        s2 = state.conj(Word.base((AffineMap(-1, b2),)), w)
        g = transporter(state, (s1, s2), (J_WORD, T_WORD))
        ok = state.eq(state.conj(s1, g), J_WORD) and state.eq(state.conj(s2, g), T_WORD)
        rep.check(ok, "pair not moved onto (j, t)", s1, s2, g)


@suite("lemma-dihedral-properties")
def _lemma_dihedral_properties(config, state, rep):
    universe = list(bounded_words(state, 1, 1))
    for letter in state.letters:
        v = letter.key
        jv = state.mul(J_WORD, v)
        probes = universe + [hnn.power(state, jv, n) for n in (-1, 1, 2)] + [state.mul(J_WORD, jv)]
        for m in (1, -2):
            s = state.mul(hnn.power(state, jv, m), J_WORD)
            js = state.mul(J_WORD, s)
            for g in probes:
                if dihedral.dihedral_membership(state, state.conj(js, g), v) is not None:
                    rep.check(dihedral.dihedral_membership(state, g, v) is not None, "(js)^g in <j,v> but g not", s, g)


def pinch_insert(state: TowerState, w: Word, rng: random.Random) -> Word:
    """Insert a pinch pair and its compensating transport; the element is unchanged."""
    ident = rng.randint(1, len(state))
    member = hnn.DihedralMember(rng.randint(-3, 3), rng.random() < 0.5)
    if rng.random() < 0.5:
        d = dihedral.decode_member(state, member, T_WORD)
        seg = concat(Word.letter(ident, -1), d, Word.letter(ident, 1), word_invert(state.transport(ident, member, 1)))
    else:
        d = dihedral.decode_member(state, member, state.key(ident))
        seg = concat(Word.letter(ident, 1), d, Word.letter(ident, -1), word_invert(state.transport(ident, member, -1)))
    pos = rng.randint(0, len(w.letters))
    return concat(hnn._prefix(w, pos), seg, Word(((),) + w.parts[pos + 1 :], w.letters[pos:]))


def length_invariant(state: TowerState, w: Word) -> tuple:
    """(top level, letters at that level); for one-level words the count is the f_length.

    Lower-level letters can be traded against the dihedral subgroups of a
    higher-level letter, so only the top count is an invariant of the element.
    """
    return hnn.top_length(state, w)


@suite("britton-length")
def _britton_length(config, state, rep):
    if not len(state):
        rep.notes.append("no letters")
        return
    rng = random.Random(config.seed + 5)
    for _ in range(config.sample_count):
        w = random_word(rng, state, config.max_base_syllables, config.max_f_length)
        w2 = w
        for _ in range(rng.randint(1, 2)):
            w2 = pinch_insert(state, w2, rng)
        r = state.reduce(w2)
        ok = length_invariant(state, r) == length_invariant(state, w) and state.eq(r, w)
        rep.check(ok, "pinch insertion changed the length", w, w2)


@suite("lemma-nonconjugate")
def _lemma_nonconjugate(config, state, rep):
    rng = random.Random(config.seed + 6)
    for _ in range(max(1, config.sample_count // 4)):
        b = Word.base(random_fp_word(rng, rng.randint(0, config.max_base_syllables)))
        n = rng.choice((1, -1, 2, 3))
        g = state.conj(hnn.power(state, JT, n), b)
        for letter in state.letters:
            rep.check(dihedral.dihedral_membership(state, g, letter.key) is None, "(jt)^b lies in D_v", b, letter.key)


@suite("centralizer-translations")
def _centralizer_translations(config, state, rep):
    rng = random.Random(config.seed + 7)
    probes = [random_word(rng, state, config.max_base_syllables, config.max_f_length) for _ in range(config.sample_count // 2)]
    probes += [Word.base((AffineMap(1, rng.choice(_OFFSETS[1:])),)) for _ in range(10)]
    probes += list(bounded_words(state, 1, 1))
    for g in probes:
        rep.check(
            _commutes(state, g, JT) == dihedral.centralizer_contains(state, dihedral.BaseTranslations(), g),
            "Cen(jt) differs from the rational translations",
            g,
        )


@suite("equivalence-descends")
def _equivalence_descends(config, state, rep):
    for s in _not_j(state, sample_involutions(config, state) + _class_of_t_samples(config, state)):
        if dihedral.equivalent(state, s, T_WORD):
            rep.check(hnn.f_length(state, s) == 0, "equivalent to t but has letters", s)


@suite("cyclic-translation")
def _cyclic_translation(config, state, rep):
    rng = random.Random(config.seed + 8)
    samples = _not_j(state, sample_involutions(config, state, count=max(1, config.sample_count // 4)))
    for s in samples:
        r = random_base_involution(rng)
        if state.eq(r, s):
            continue
        rs = state.mul(r, s)
        conj, core = hnn.cyclically_reduce(state, rs)
        r1 = state.conj(r, conj)
        s1 = state.conj(s, conj)
        ok = (
            state.eq(core, state.mul(r1, s1))
            and hnn.order_class(state, r1) == 2
            and hnn.order_class(state, s1) == 2
            and len(core.letters) % 2 == 0
            and _rotations_do_not_shorten(state, core)
        )
        rep.check(ok, "cyclic core of rs is not a reduced translation", r, s)


def _rotations_do_not_shorten(state, core):
    prof = hnn.level_profile(state, core)
    for i in range(len(core.letters)):
        x = hnn._prefix(core, i)
        if hnn.level_profile(state, state.conj(core, x)) < prof:
            return False
    return True


def euclid_instances(state: TowerState, count: int = 20, seed: int = 1):
    """(r, s, h, m, k) with rs of letter length 2m and h in Cen(rs) of length k.

    Built from generators r·t1 of length 2 with r = t' and t1 = f c f^-1 for
    a base involution c, taking rs = (r t1)^a and h = (r t1)^b.
    """
    rng = random.Random(seed)
    grid = [(a, b) for a in (1, 2, 3) for b in (1, 2, 3, 4)]
    out = []
    i = 0
    while len(out) < count:
        a, b = grid[i % len(grid)]
        i += 1
        ident = rng.randint(1, len(state))
        sign = rng.choice((1, -1))
        c = Word.base((AffineMap(-1, rng.choice((1, 3, Fraction(1, 2), -5))),))
        f = Word.letter(ident, sign)
        x = Word.base((AffineMap(rng.choice((1, 2, 3)), 0),)) if rng.random() < 0.5 else ONE
        t1 = state.mul(f, x, c, state.inv(x), state.inv(f))
        g = state.mul(T_PRIME_WORD, t1)
        if hnn.top_length(state, g)[1] != 2 or hnn.top_length(state, hnn.cyclically_reduce(state, g)[1])[1] != 2:
            continue
        rs = hnn.power(state, g, a)
        s = state.mul(T_PRIME_WORD, rs)
        h = hnn.power(state, g, rng.choice((b, -b)))
        out.append((T_PRIME_WORD, s, h, a, 2 * b))
    return out


@suite("euclid")
def _euclid(config, state, rep):
    if not len(state):
        rep.notes.append("no letters")
        return
    gcd_2m = gcd_m = 0
    for r, s, h, m, k in euclid_instances(state, 20, config.seed):
        result = dihedral.euclid_centralizer_element(state, r, s, h)
        rs = state.mul(r, s)
        length = hnn.top_length(state, result)[1]
        ok = (
            dihedral.commutes(state, result, rs)
            and hnn.power_solve(state, rs, result) is not None
            and hnn.power_solve(state, h, result) is not None
        )
        rep.check(ok, "descent post-conditions fail", rs, h, result)
        gcd_2m += length == math.gcd(2 * m, k)
        gcd_m += length == math.gcd(m, k)
    rep.notes.append(f"terminal length matched gcd(2m,k) in {gcd_2m}/20 and gcd(m,k) in {gcd_m}/20")


@suite("neumann-witness")
def _neumann_witness(config, state, rep):
    tz = state.parse("z^-1 t z")
    jtz = state.mul(J_WORD, tz)
    rep.check(not _commutes(state, JT, jtz), "jt and j t^z commute", JT, jtz)
    for letter in state.letters:
        jv = state.mul(J_WORD, letter.key)
        rep.check(not _commutes(state, JT, jv), "jt commutes with a letter translation", jv)


AXIOM_SUITES = ("condition1", "condition2", "condition3", "condition4", "condition5", "condition6")


@suite("freeproduct-bootstrap")
def _freeproduct_bootstrap(config, state, rep):
    base = TowerState()
    sub = SuiteConfig(config.seed, config.max_base_syllables, 0, config.max_exponent, max(1, config.sample_count // 2))
    for name in AXIOM_SUITES:
        r = check_suite(name, sub, base)
        rep.cases += r.cases
        rep.failures.extend(f"[{name}] {f}" for f in r.failures)


ALIASES = {"malnormal": "lemma-malnormal"}


def check_suite(name: str, config: SuiteConfig, state: TowerState) -> SuiteReport:
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    rep = SuiteReport(name)
    SUITES[name](config, state, rep)
    if rep.failures:
        rep.failures = [
            f"seed={config.seed} base<={config.max_base_syllables} f<={config.max_f_length} "
            f"exp<={config.max_exponent}: {msg}"
            for msg in rep.failures
        ]
    return rep


def run_suites(names: Iterable[str], config: SuiteConfig, state: TowerState) -> list:
    return [check_suite(n, config, state) for n in names]


def render_reports(reports) -> str:
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name} cases={r.cases} failures={len(r.failures)}")
    for r in reports:
        for note in r.notes:
            lines.append(f"  note {r.name}: {note}")
    for r in reports:
        if r.failures:
            lines.append(f"--- {r.name}")
            lines.extend(f"  {f}" for f in r.failures)
    return "\n".join(lines)
