"""Text form of tower words.

Grammar (tokens separated by whitespace or ``*``)::

    word   := factor*
    factor := atom ('^' INT)?
    atom   := 'j' | 't' | "t'" | '1' | 'z' | 'aff(' RAT ',' RAT ')'
            | 'f{' INT '}' | '(' word ')'

``z^k`` is z to the k; ``f{n}^-1`` is the inverse stable letter n.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Optional

from .affine import J, T, T_PRIME, AffineMap, format_rational
from .freeprod import is_z
from .hnn import ONE, UnknownLetterError, Word, concat, word_invert


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_RAT = r"[+-]?\d+(?:/\d+)?"
_TOKEN = re.compile(
    rf"""
    (?P<ws>[\s*]+)
  | (?P<aff>aff\(\s*(?P<a>{_RAT})\s*,\s*(?P<b>{_RAT})\s*\))
  | (?P<letter>f\{{(?P<id>\d+)\}})
  | (?P<tp>t')
  | (?P<sym>[jtz1])
  | (?P<pow>\^\s*(?P<exp>[+-]?\d+))
  | (?P<open>\()
  | (?P<close>\))
    """,
    re.VERBOSE,
)

_SUGAR = {"j": J, "t": T, "t'": T_PRIME}
_PRINTED = {"j": J, "t": T}


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unknown token {text[pos:pos + 8]!r}", pos)
        kind = m.lastgroup
        if kind in ("a", "b", "id", "exp"):
            kind = next(k for k in ("aff", "letter", "pow") if m.group(k))
        if kind != "ws":
            out.append((kind, m, pos))
        pos = m.end()
    out.append(("end", None, pos))
    return out


def _rational(s: str, pos: int) -> Fraction:
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise WordSyntaxError("zero denominator", pos) from None


class _Parser:
    def __init__(self, text: str, has_letter: Optional[Callable[[int], bool]]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.has_letter = has_letter

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def word(self) -> Word:
        factors = []
        while self.peek()[0] not in ("end", "close"):
            factors.append(self.factor())
        return concat(ONE, *factors)

    def factor(self) -> Word:
        w = self.atom()
        if self.peek()[0] == "pow":
            _, m, _ = self.take()
            n = int(m.group("exp"))
            base = w if n >= 0 else word_invert(w)
            w = concat(ONE, *([base] * abs(n)))
        return w

    def atom(self) -> Word:
        kind, m, pos = self.take()
        if kind == "sym":
            c = m.group(0)
            if c == "1":
                return ONE
            if c == "z":
                return Word.base((1,))
            return Word.base((_SUGAR[c],))
        if kind == "tp":
            return Word.base((T_PRIME,))
        if kind == "aff":
            a = _rational(m.group("a"), pos)
            b = _rational(m.group("b"), pos)
            if a == 0:
                raise WordSyntaxError("affine slope must be nonzero", pos)
            g = AffineMap(a, b)
            return ONE if g.is_identity else Word.base((g,))
        if kind == "letter":
            ident = int(m.group("id"))
            if self.has_letter is not None and not self.has_letter(ident):
                raise UnknownLetterError(f"unknown stable letter f{{{ident}}} at position {pos}")
            return Word.letter(ident, 1)
        if kind == "open":
            inner = self.word()
            kind2, _, pos2 = self.take()
            if kind2 != "close":
                raise WordSyntaxError("expected ')'", pos2)
            return inner
        if kind == "end":
            raise WordSyntaxError("unexpected end of input", pos)
        raise WordSyntaxError(f"unexpected {m.group(0)!r}", pos)


def parse_word(text: str, has_letter: Optional[Callable[[int], bool]] = None) -> Word:
    """Parse word text; ``has_letter`` rejects unknown stable letter ids."""
    p = _Parser(text, has_letter)
    w = p.word()
    kind, m, pos = p.peek()
    if kind != "end":
        raise WordSyntaxError("unbalanced ')'", pos)
    return w


def format_syllable(x) -> str:
    if is_z(x):
        return "z" if x == 1 else f"z^{x}"
    for name, g in _PRINTED.items():
        if x == g:
            return name
    return f"aff({format_rational(x.a)},{format_rational(x.b)})"


def format_word(w: Word) -> str:
    out = []
    for i, part in enumerate(w.parts):
        out.extend(format_syllable(x) for x in part)
        if i < len(w.letters):
            ident, sign = w.letters[i]
            out.append(f"f{{{ident}}}" if sign == 1 else f"f{{{ident}}}^-1")
    return " ".join(out) if out else "1"
