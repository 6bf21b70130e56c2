"""Normal forms in G0 = AGL(1,Q) * Z.

A word is a tuple of syllables, each either an :class:`AffineMap` (never the
identity) or a nonzero ``int`` k standing for z^k.  Adjacent syllables always
come from different factors.
"""

from __future__ import annotations

from typing import Tuple, Union

from .affine import AffineMap, affine_power, compose, discrete_log, invert

Syllable = Union[AffineMap, int]
FPWord = Tuple[Syllable, ...]

ONE: FPWord = ()

ORDER_ONE = 1
ORDER_TWO = 2
INFINITE = "infinite"


def is_z(x: Syllable) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def same_factor(x: Syllable, y: Syllable) -> bool:
    return is_z(x) == is_z(y)


def _merge(x: Syllable, y: Syllable) -> Syllable | None:
    if is_z(x):
        k = x + y
        return k or None
    m = compose(x, y)
    return None if m.is_identity else m


def _inv(x: Syllable) -> Syllable:
    return -x if is_z(x) else invert(x)


def check_word(u: FPWord) -> None:
    for x in u:
        if is_z(x):
            if x == 0:
                raise ValueError("z^0 syllable")
        elif not isinstance(x, AffineMap) or x.is_identity:
            raise ValueError(f"bad syllable {x!r}")
    for x, y in zip(u, u[1:]):
        if same_factor(x, y):
            raise ValueError(f"adjacent syllables from one factor: {u!r}")


def normalize(syllables) -> FPWord:
    """Normal form of an arbitrary syllable sequence (identities allowed)."""
    out: list[Syllable] = []
    for x in syllables:
        if (is_z(x) and x == 0) or (not is_z(x) and x.is_identity):
            continue
        if out and same_factor(out[-1], x):
            m = _merge(out.pop(), x)
            if m is not None:
                out.append(m)
        else:
            out.append(x)
    return tuple(out)


def fp_multiply(u: FPWord, v: FPWord) -> FPWord:
    out = list(u)
    for x in v:
        if out and same_factor(out[-1], x):
            m = _merge(out.pop(), x)
            if m is not None:
                out.append(m)
        else:
            out.append(x)
    return tuple(out)


def fp_invert(u: FPWord) -> FPWord:
    return tuple(_inv(x) for x in reversed(u))


def fp_cyclic_reduce(u: FPWord) -> tuple[FPWord, FPWord]:
    """Return (conjugator, core) with u = conjugator · core · conjugator^-1."""
    conj: FPWord = ()
    core = u
    while len(core) >= 2 and same_factor(core[0], core[-1]):
        a = core[0]
        conj = fp_multiply(conj, (a,))
        core = fp_multiply(fp_multiply((_inv(a),), core), (a,))
    return conj, core


def fp_order_class(u: FPWord):
    _, core = fp_cyclic_reduce(u)
    if not core:
        return ORDER_ONE
    if len(core) == 1 and not is_z(core[0]) and core[0].a == -1:
        return ORDER_TWO
    return INFINITE


def fp_power(u: FPWord, n: int) -> FPWord:
    if n == 0 or not u:
        return ()
    if n < 0:
        u, n = fp_invert(u), -n
    conj, core = fp_cyclic_reduce(u)
    if len(core) == 1:
        x = core[0]
        body = normalize([x * n if is_z(x) else affine_power(x, n)])
    else:
        body = core * n
    return fp_multiply(fp_multiply(conj, body), fp_invert(conj))


def fp_power_solve(target: FPWord, h: FPWord) -> int | None:
    """Some n with h^n = target, or None.  Requires h ≠ 1."""
    if not h:
        raise ValueError("cannot solve powers of the identity")
    if not target:
        return 0
    conj, core = fp_cyclic_reduce(h)
    x = fp_multiply(fp_multiply(fp_invert(conj), target), conj)
    if not x:
        return 0
    if len(core) >= 2:
        if len(x) % len(core):
            return None
        n = len(x) // len(core)
        for cand in (n, -n):
            if fp_power(core, cand) == x:
                return cand
        return None
    if len(x) != 1:
        return None
    g, y = core[0], x[0]
    if is_z(g):
        if not is_z(y) or y % g:
            return None
        return y // g
    if is_z(y):
        return None
    if g.a == 1:
        if y.a != 1:
            return None
        n = y.b / g.b
        return int(n) if n.denominator == 1 else None
    if g.a == -1:
        return 1 if y == g else None
    n = discrete_log(g.a, y.a)
    if n is None or affine_power(g, n) != y:
        return None
    return n
