"""The lazily extended tower G0 ⊂ G1 ⊂ ... of stable letters.

Each stable letter f_l has a minimal involution v_l as key and realizes
``j^f = j`` and ``t^f = v_l``; all letters share one multi-HNN presentation.
:class:`TowerState` is also the membership oracle the word engine runs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import dihedral, hnn
from .affine import T, AffineMap
from .hnn import J_WORD, DihedralMember, UnknownLetterError, Word, concat
from .words import format_word, parse_word

T_WORD = Word.base((T,))

SESSION_HEADER = "dihedral-tower v1"


class TowerError(ValueError):
    pass


class SessionFormatError(TowerError):
    pass


@dataclass(frozen=True)
class StableLetter:
    id: int
    key: Word
    level: int


class TowerState:
    """Append-only registry of stable letters.

    Mutating calls (:func:`ensure_letter` and everything that may create a
    letter) need exclusive access; read-only word operations may share a
    registry that is not being extended.
    """

    def __init__(self):
        self.letters: list[StableLetter] = []
        self._member_cache: dict = {}
        self._core_cache: dict = {}

    def __len__(self):
        return len(self.letters)

    def has_letter(self, ident: int) -> bool:
        return 1 <= ident <= len(self.letters)

    def _get(self, ident: int) -> StableLetter:
        if not self.has_letter(ident):
            raise UnknownLetterError(f"unknown stable letter f{{{ident}}}")
        return self.letters[ident - 1]

    # oracle interface

    def level(self, ident: int) -> int:
        return self._get(ident).level

    def key(self, ident: int) -> Word:
        return self._get(ident).key

    def member_Dt(self, g: Word) -> Optional[DihedralMember]:
        return self._member(0, g)

    def member_Dv(self, ident: int, g: Word) -> Optional[DihedralMember]:
        self._get(ident)
        return self._member(ident, g)

    def _member(self, ident: int, g: Word):
        k = (ident, g)
        if k not in self._member_cache:
            gen = T_WORD if ident == 0 else self.key(ident)
            self._member_cache[k] = dihedral.dihedral_membership(self, g, gen)
        return self._member_cache[k]

    def transport(self, ident: int, member: DihedralMember, direction: int) -> Word:
        """Image of (jt)^n[j] under f (direction +1) or of (jv)^n[j] under f^-1."""
        gen = self.key(ident) if direction == 1 else T_WORD
        return dihedral.decode_member(self, member, gen)

    # conveniences

    def parse(self, text: str) -> Word:
        return parse_word(text, self.has_letter)

    def reduce(self, w: Word) -> Word:
        return hnn.britton_reduce(self, w)

    def mul(self, *ws: Word) -> Word:
        return hnn.multiply(self, *ws)

    def inv(self, w: Word) -> Word:
        return hnn.invert(self, w)

    def conj(self, g: Word, h: Word) -> Word:
        return hnn.conjugate(self, g, h)

    def eq(self, u: Word, v: Word) -> bool:
        return hnn.equal(self, u, v)

    def snapshot(self) -> "TowerState":
        other = TowerState()
        other.letters = list(self.letters)
        return other


def ensure_letter(state: TowerState, v: Word) -> int:
    """Id of the letter keyed by the minimal involution v, creating it if needed.

    An existing letter is reused when its key generates the same dihedral
    group with j, i.e. equals v or v^j; for the latter t^(f j) = v.
    """
    v = state.reduce(v)
    if hnn.order_class(state, v) != 2 or v == J_WORD:
        raise TowerError("letter keys are involutions other than j")
    for letter in state.letters:
        if dihedral.same_dihedral(state, letter.key, v):
            return letter.id
    key = dihedral.equiv_key(state, v)
    if isinstance(key, dihedral.ClassOfT):
        raise TowerError("v is already t^a for some a in Cen(j); no letter needed")
    if not state.eq(key.u, v):
        raise TowerError("not a minimal involution; use its minimal representative")
    level = 1 + max((state.level(i) for i, _ in v.letters), default=0)
    ident = len(state.letters) + 1
    state.letters.append(StableLetter(ident, v, level))
    return ident


def conjugator_from_t(state: TowerState, s: Word) -> Word:
    """Some a in Cen(j) with t^a = s; may create a letter."""
    s = state.reduce(s)
    key = dihedral.equiv_key(state, s)
    if isinstance(key, dihedral.ClassOfT):
        a = dihedral.translation_conjugator(state, s)
        if a is None:
            raise dihedral.InternalError("class of t without a translation conjugator")
        return a
    ident = ensure_letter(state, key.u)
    member = dihedral.dihedral_membership(state, s, state.key(ident))
    if member is None or not member.with_j or member.n == 0:
        raise dihedral.InternalError("involution not found in the dihedral group of its key")
    scale = AffineMap(Fraction(-1, member.n), 0)
    return concat(Word.affine(scale), Word.letter(ident))


def conjugate_to_j(state: TowerState, r: Word) -> Word:
    """Some h with r^h = j."""
    w, c = hnn.involution_core(state, r)
    b = c[0].b
    return state.mul(w, Word.affine(AffineMap(1, b / 2)))


def transporter(state: TowerState, pair_r, pair_s) -> Word:
    """g with r1^g = s1 and r2^g = s2; may create letters."""
    r1, r2 = (state.reduce(x) for x in pair_r)
    s1, s2 = (state.reduce(x) for x in pair_s)
    for x in (r1, r2, s1, s2):
        if hnn.order_class(state, x) != 2:
            raise TowerError("transporter needs involutions")
    if state.eq(r1, r2) or state.eq(s1, s2):
        raise TowerError("transporter needs pairs of distinct involutions")
    h = _to_j_t(state, r1, r2)
    k = _to_j_t(state, s1, s2)
    return state.mul(h, state.inv(k))


def _to_j_t(state: TowerState, r1: Word, r2: Word) -> Word:
    h1 = conjugate_to_j(state, r1)
    a = conjugator_from_t(state, state.conj(r2, h1))
    return state.mul(h1, state.inv(a))


def session_save(state: TowerState) -> str:
    lines = [SESSION_HEADER]
    for letter in state.letters:
        lines.append(f"letter {letter.id} level {letter.level} key {format_word(letter.key)}")
    return "\n".join(lines) + "\n"


def session_load(document: str) -> TowerState:
    lines = [ln.strip() for ln in document.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0] != SESSION_HEADER:
        raise SessionFormatError(f"missing header {SESSION_HEADER!r}")
    state = TowerState()
    for n, line in enumerate(lines[1:], start=2):
        fields = line.split(None, 5)
        if len(fields) != 6 or fields[0] != "letter" or fields[2] != "level" or fields[4] != "key":
            raise SessionFormatError(f"line {n}: expected 'letter <id> level <k> key <word>'")
        try:
            ident, level = int(fields[1]), int(fields[3])
        except ValueError:
            raise SessionFormatError(f"line {n}: bad integer") from None
        if ident != len(state.letters) + 1:
            raise SessionFormatError(f"line {n}: letter ids must be 1, 2, ... in order")
        try:
            key = state.parse(fields[5])
            got = ensure_letter(state, key)
        except (ValueError, KeyError) as exc:
            raise SessionFormatError(f"line {n}: {exc}") from None
        if got != ident:
            raise SessionFormatError(f"line {n}: key duplicates letter {got}")
        if state.letters[-1].level != level:
            raise SessionFormatError(f"line {n}: stated level {level}, key has level {state.letters[-1].level}")
    return state
