"""Words over the tower of stable letters and Britton reduction.

A :class:`Word` is ``g0 f_{l1}^{d1} g1 ... f_{lm}^{dm} gm`` with each ``gi`` a
free-product word of G0.  Letter ``f_l`` conjugates ``j -> j`` and ``t -> v_l``
(``f^-1 t f = v``), so ``f^-1 g f`` with ``g`` in ``<j,t>`` and ``f g f^-1``
with ``g`` in ``<j,v>`` are the pinches removed by reduction.

Letters carry levels: the key of a level-L letter only involves letters of
lower level.  A pair of occurrences of the same letter can pinch only when
every letter strictly between them has lower level.

Every function takes the oracle first; it answers membership in the two
dihedral subgroups of each letter and transports members across the letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Tuple

from .affine import J as AFF_J
from .freeprod import (
    INFINITE,
    FPWord,
    fp_cyclic_reduce,
    fp_invert,
    fp_multiply,
    fp_order_class,
    fp_power,
    fp_power_solve,
)

Letter = Tuple[int, int]  # (letter id, +1 or -1)


class UnknownLetterError(KeyError):
    pass


@dataclass(frozen=True)
class DihedralMember:
    """``(js)^n`` when ``with_j`` is false, ``(js)^n j`` otherwise."""

    n: int
    with_j: bool


class SubgroupOracle(Protocol):
    def level(self, letter: int) -> int: ...

    def member_Dt(self, g: "Word") -> Optional[DihedralMember]: ...

    def member_Dv(self, letter: int, g: "Word") -> Optional[DihedralMember]: ...

    def transport(self, letter: int, member: DihedralMember, direction: int) -> "Word": ...


@dataclass(frozen=True)
class Word:
    parts: Tuple[FPWord, ...] = ((),)
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if len(self.parts) != len(self.letters) + 1:
            raise ValueError("a word needs one more base part than letters")
        for _, sign in self.letters:
            if sign not in (1, -1):
                raise ValueError("letter exponents are ±1")

    @classmethod
    def base(cls, fp: FPWord) -> "Word":
        return cls((tuple(fp),), ())

    @classmethod
    def affine(cls, g) -> "Word":
        return cls(((),)) if g.is_identity else cls(((g,),))

    @classmethod
    def letter(cls, ident: int, sign: int = 1) -> "Word":
        return cls(((), ()), ((ident, sign),))

    @property
    def is_base(self) -> bool:
        return not self.letters

    @property
    def is_trivial(self) -> bool:
        """Literally empty; group identity only for reduced words."""
        return not self.letters and not self.parts[0]

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __repr__(self):
        from .words import format_word

        return f"Word({format_word(self)!r})"


ONE = Word()
J_WORD = Word.base((AFF_J,))


def concat(*words: Word) -> Word:
    parts: list[FPWord] = [()]
    letters: list[Letter] = []
    for w in words:
        parts[-1] = fp_multiply(parts[-1], w.parts[0])
        parts.extend(w.parts[1:])
        letters.extend(w.letters)
    return Word(tuple(parts), tuple(letters))


def word_invert(w: Word) -> Word:
    return Word(
        tuple(fp_invert(p) for p in reversed(w.parts)),
        tuple((ident, -sign) for ident, sign in reversed(w.letters)),
    )


def _slice(w: Word, i: int, k: int) -> Word:
    """Subword strictly between letter positions i and k (i < k)."""
    return Word(w.parts[i + 1 : k + 1], w.letters[i + 1 : k])


def _prefix(w: Word, i: int) -> Word:
    """Everything before letter i, including base part i."""
    return Word(w.parts[: i + 1], w.letters[:i])


def _suffix(w: Word, k: int) -> Word:
    """Everything after letter k."""
    return Word(w.parts[k + 1 :], w.letters[k + 1 :])


def _pinch_candidates(oracle: SubgroupOracle, w: Word):
    levels = [oracle.level(ident) for ident, _ in w.letters]
    found = []
    for i, (ident, sign) in enumerate(w.letters):
        for k in range(i + 1, len(w.letters)):
            if levels[k] >= levels[i]:
                if w.letters[k] == (ident, -sign):
                    found.append((k - i, i, k))
                break
    found.sort()
    return found


def britton_reduce(oracle: SubgroupOracle, w: Word) -> Word:
    """Remove pinches, innermost then leftmost, until none is left."""
    for ident, _ in w.letters:
        oracle.level(ident)
    while True:
        for _, i, k in _pinch_candidates(oracle, w):
            ident, sign = w.letters[i]
            seg = _slice(w, i, k)
            if sign == -1:
                member = oracle.member_Dt(seg)
            else:
                member = oracle.member_Dv(ident, seg)
            if member is None:
                continue
            image = oracle.transport(ident, member, -sign)
            w = concat(_prefix(w, i), image, _suffix(w, k))
            break
        else:
            return w


reduce = britton_reduce


def multiply(oracle: SubgroupOracle, *words: Word) -> Word:
    return britton_reduce(oracle, concat(*words))


def invert(oracle: SubgroupOracle, w: Word) -> Word:
    return britton_reduce(oracle, word_invert(w))


def conjugate(oracle: SubgroupOracle, g: Word, h: Word) -> Word:
    """g^h = h^-1 g h."""
    return multiply(oracle, word_invert(h), g, h)


def is_identity(oracle: SubgroupOracle, w: Word) -> bool:
    return britton_reduce(oracle, w).is_trivial


def equal(oracle: SubgroupOracle, u: Word, v: Word) -> bool:
    return is_identity(oracle, concat(u, word_invert(v)))


def f_length(oracle: SubgroupOracle, w: Word) -> int:
    return len(britton_reduce(oracle, w).letters)


def level_profile(oracle: SubgroupOracle, w: Word) -> tuple:
    """Letter levels sorted descending; orders words by top-level length first."""
    return tuple(sorted((oracle.level(i) for i, _ in w.letters), reverse=True))


def top_length(oracle: SubgroupOracle, w: Word) -> tuple[int, int]:
    """(highest level present, number of letters at that level); (0, 0) for base words."""
    prof = level_profile(oracle, w)
    if not prof:
        return 0, 0
    return prof[0], prof.count(prof[0])


def cyclically_reduce(oracle: SubgroupOracle, w: Word) -> tuple[Word, Word]:
    """Return (conjugator, core) with w = conjugator · core · conjugator^-1.

    A core with letters starts with a letter and no rotation of it admits a
    pinch.  A letter-free core is cyclically reduced in G0.
    """
    conj = ONE
    cur = britton_reduce(oracle, w)
    while True:
        if cur.is_base:
            x, c = fp_cyclic_reduce(cur.parts[0])
            return britton_reduce(oracle, concat(conj, Word.base(x))), Word.base(c)
        measure = level_profile(oracle, cur)
        for i in range(len(cur.letters)):
            x = _prefix(cur, i)
            cand = britton_reduce(oracle, concat(word_invert(x), cur, x))
            if level_profile(oracle, cand) < measure:
                conj, cur = concat(conj, x), cand
                break
        else:
            x = _prefix(cur, 0)
            core = britton_reduce(oracle, concat(word_invert(x), cur, x))
            return britton_reduce(oracle, concat(conj, x)), core


def order_class(oracle: SubgroupOracle, w: Word):
    w = britton_reduce(oracle, w)
    if w.is_trivial:
        return 1
    _, core = cyclically_reduce(oracle, w)
    if core.letters:
        return INFINITE
    return fp_order_class(core.parts[0])


def power(oracle: SubgroupOracle, w: Word, n: int) -> Word:
    if n == 0:
        return ONE
    if n < 0:
        w, n = word_invert(w), -n
    conj, core = cyclically_reduce(oracle, w)
    if core.is_base:
        body = Word.base(fp_power(core.parts[0], n))
    else:
        body = concat(*([core] * n))
    return multiply(oracle, conj, body, word_invert(conj))


def power_solve(oracle: SubgroupOracle, target: Word, h: Word) -> int | None:
    """Some n with h^n = target, or None.  Requires h ≠ 1."""
    conj, core = cyclically_reduce(oracle, h)
    if core.is_trivial:
        raise ValueError("cannot solve powers of the identity")
    x = multiply(oracle, word_invert(conj), target, conj)
    if x.is_trivial:
        return 0
    if core.is_base:
        if not x.is_base:
            return None
        return fp_power_solve(x.parts[0], core.parts[0])
    top, count = top_length(oracle, core)
    xtop, xcount = top_length(oracle, x)
    if xtop != top or xcount % count:
        return None
    n = xcount // count
    for cand in (n, -n):
        if equal(oracle, power(oracle, core, cand), x):
            return cand
    return None


def involution_core(oracle: SubgroupOracle, s: Word) -> tuple[Word, FPWord]:
    """Write an involution as w · c · w^-1 with c a single affine involution."""
    conj, core = cyclically_reduce(oracle, s)
    if core.letters or fp_order_class(core.parts[0]) != 2:
        raise ValueError("not an involution")
    return conj, core.parts[0]
