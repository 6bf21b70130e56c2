"""Decisions inside infinite dihedral subgroups <j, s>.

Involutions s, s' are equivalent (relative to j) when (js)^m = (js')^n for
nonzero m, n.  Every class that leaves the affine factor has a minimal
member u: Cen(js) = <ju> for every s in the class.  The affine class of t has
no minimal member, since aff(-1, c) has roots of every order.

Once stable letters exist, t^a for a in Cen(j) is another divisible class
(for a = f_l it is the class of the letter key v_l).  Such classes are keyed
``ClassOfT(a)``, with :data:`CLASS_OF_T` for a = 1; a is determined up to a
base scaling on the left.  All other classes are keyed ``Minimal(u)``.  Both
u and u^j = j u j generate the same dihedral group with j, so ``Minimal`` keys
are compared up to conjugation by j; the representative returned is oriented
so that js = (ju)^k with k > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .affine import T, AffineMap
from .affine import conjugate as aff_conj
from .freeprod import fp_power, is_z
from .hnn import (
    J_WORD,
    ONE,
    DihedralMember,
    SubgroupOracle,
    Word,
    _prefix,
    _slice,
    _suffix,
    britton_reduce,
    concat,
    cyclically_reduce,
    equal,
    multiply,
    order_class,
    power,
    power_solve,
    top_length,
    word_invert,
)

# Dihedral shifts tried when lining up a candidate root with the given core.
ROOT_SEARCH_BOUND = 12


class InternalError(AssertionError):
    """A branch that the group theory rules out was reached."""


@dataclass(frozen=True)
class ClassOfT:
    """Class of t^a; the default a = 1 is the class of t itself."""

    conjugator: Word = ONE

    def __repr__(self):
        if self.conjugator.is_trivial:
            return "ClassOfT"
        return f"ClassOfT[{_fmt(self.conjugator)}]"


CLASS_OF_T = ClassOfT()


def _fmt(w: Word) -> str:
    from .words import format_word

    return format_word(w)


@dataclass(frozen=True)
class Minimal:
    u: Word


EquivKey = Union[ClassOfT, Minimal]


@dataclass(frozen=True)
class BaseTranslations:
    """a^-1 · {x -> x + c : c in Q} · a; with a = 1 the centralizer of jt."""

    conjugator: Word = ONE


@dataclass(frozen=True)
class Cyclic:
    generator: Word


CentralizerDesc = Union[BaseTranslations, Cyclic]


def dihedral_membership(oracle: SubgroupOracle, g: Word, s: Word) -> Optional[DihedralMember]:
    """Decode g as (js)^n or (js)^n j, or return None."""
    js = multiply(oracle, J_WORD, s)
    n = power_solve(oracle, g, js)
    if n is not None:
        return DihedralMember(n, False)
    n = power_solve(oracle, concat(g, J_WORD), js)
    if n is not None:
        return DihedralMember(n, True)
    return None


def decode_member(oracle: SubgroupOracle, member: DihedralMember, s: Word) -> Word:
    js = multiply(oracle, J_WORD, s)
    w = power(oracle, js, member.n)
    return multiply(oracle, w, J_WORD) if member.with_j else w


def is_affine_involution(w: Word) -> bool:
    return (
        w.is_base
        and len(w.parts[0]) == 1
        and not is_z(w.parts[0][0])
        and w.parts[0][0].a == -1
    )


def _require_involution(oracle: SubgroupOracle, s: Word) -> Word:
    s = britton_reduce(oracle, s)
    if order_class(oracle, s) != 2:
        raise ValueError("not an involution")
    if s == J_WORD:
        raise ValueError("j has no equivalence class relative to itself")
    return s


def _divisors_desc(n: int):
    return [k for k in range(n, 1, -1) if n % k == 0]


def _dihedral_elements(oracle: SubgroupOracle, gen_inv: Word, bound: int):
    """(j s)^n and (j s)^n j for |n| <= bound, small |n| first."""
    js = multiply(oracle, J_WORD, gen_inv)
    for m in range(bound + 1):
        for n in ((m, -m) if m else (0,)):
            w = power(oracle, js, n)
            yield w
            yield multiply(oracle, w, J_WORD)


def _letter_generator(oracle, ident: int, sign: int) -> Word:
    """Involution s with D = <j, s> the subgroup that commutes past f^sign."""
    return Word.base((T,)) if sign == 1 else oracle.key(ident)


def maximal_root(oracle: SubgroupOracle, h: Word) -> tuple[Word, int]:
    """Return (p, k) with p^k = h and k maximal, for a cyclically reduced h ≠ 1."""
    if h.is_base:
        core = h.parts[0]
        for k in _divisors_desc(len(core)):
            p = core[: len(core) // k]
            if fp_power(p, k) == core:
                return Word.base(p), k
        return h, 1

    top, count = top_length(oracle, h)
    tops = [i for i, (ident, _) in enumerate(h.letters) if oracle.level(ident) == top]
    rot = _prefix(h, tops[0])
    H = britton_reduce(oracle, concat(word_invert(rot), h, rot))
    tops = [i for i, (ident, _) in enumerate(H.letters) if oracle.level(ident) == top]
    if len(tops) != count or tops[0] != 0 or H.parts[0]:
        raise InternalError("rotation did not bring a top letter to the front")
    seq = [H.letters[i] for i in tops]
    for k in _divisors_desc(count):
        r = count // k
        if any(seq[i] != seq[i + r] for i in range(count - r)):
            continue
        end = tops[r - 1]
        P = Word(H.parts[: end + 1] + ((),), H.letters[: end + 1])
        x_r = _slice(H, end, tops[r])
        head = concat(P, x_r)
        ident, sign = H.letters[0]
        for d in _dihedral_elements(oracle, _letter_generator(oracle, ident, sign), ROOT_SEARCH_BOUND):
            p = multiply(oracle, head, d)
            if equal(oracle, power(oracle, p, k), H):
                return multiply(oracle, rot, p, word_invert(rot)), k
    return h, 1


def is_scaling(oracle: SubgroupOracle, a: Word) -> bool:
    """a reduces to x -> λx (possibly the identity)."""
    a = britton_reduce(oracle, a)
    if a.is_trivial:
        return True
    return a.is_base and len(a.parts[0]) == 1 and not is_z(a.parts[0][0]) and a.parts[0][0].b == 0


def _rotations(oracle: SubgroupOracle, p: Word):
    """(x, x^-1 p x) over rotations of p that start at a top-level letter."""
    if p.is_base:
        core = p.parts[0]
        for i in range(len(core)):
            yield Word.base(core[:i]), Word.base(core[i:] + core[:i])
        return
    top, _ = top_length(oracle, p)
    for i, (ident, _) in enumerate(p.letters):
        if oracle.level(ident) == top:
            x = _prefix(p, i)
            yield x, britton_reduce(oracle, concat(word_invert(x), p, x))


def _top_letters(oracle: SubgroupOracle, w: Word) -> list:
    # cyclic sequence of top-level letters; a conjugacy invariant of cyclic cores
    top, _ = top_length(oracle, w)
    return [x for x in w.letters if oracle.level(x[0]) == top]


def conjugate_cores(oracle: SubgroupOracle, p: Word, c: Word) -> Optional[Word]:
    """Some y with y^-1 p y = c for cyclically reduced p and c, or None.

    Tries rotations of p and, when letters are present, a bounded set of
    shifts by the dihedral subgroup attached to the leading letter.
    """
    if p.is_base != c.is_base:
        return None
    if p.is_base:
        if len(p.parts[0]) != len(c.parts[0]):
            return None
        for x, rot in _rotations(oracle, p):
            if rot.parts[0] == c.parts[0]:
                return x
        return None
    if top_length(oracle, p) != top_length(oracle, c):
        return None
    seq_p, seq_c = _top_letters(oracle, p), _top_letters(oracle, c)
    if not any(seq_p[i:] + seq_p[:i] == seq_c for i in range(len(seq_p))):
        return None
    top, _ = top_length(oracle, c)
    last_c = max(i for i, (ident, _) in enumerate(c.letters) if oracle.level(ident) == top)
    tail_c = word_invert(_suffix(c, last_c))
    for x, rot in _rotations(oracle, p):
        ident, sign = rot.letters[0]
        last = max(i for i, (ident2, _) in enumerate(rot.letters) if oracle.level(ident2) == top)
        if rot.letters[last] != c.letters[last_c]:
            continue
        tail = _suffix(rot, last)
        last_ident, last_sign = rot.letters[last]
        for d in _dihedral_elements(oracle, _letter_generator(oracle, ident, sign), ROOT_SEARCH_BOUND):
            # d^-1 rot d c^-1 = 1 needs a pinch where rot meets c^-1
            seg = britton_reduce(oracle, concat(tail, d, tail_c))
            if last_sign == -1:
                pinch = oracle.member_Dt(seg)
            else:
                pinch = oracle.member_Dv(last_ident, seg)
            if pinch is None:
                continue
            y = concat(x, d)
            if equal(oracle, concat(word_invert(y), p, y), c):
                return britton_reduce(oracle, y)
    return None


def _letter_cores(oracle: SubgroupOracle):
    """(letter id, x, c) with j v_l = x c x^-1 and c cyclically reduced."""
    cache = getattr(oracle, "_core_cache", None)
    out = []
    for letter in getattr(oracle, "letters", ()):
        if cache is not None and letter.id in cache:
            out.append(cache[letter.id])
            continue
        x, c = cyclically_reduce(oracle, multiply(oracle, J_WORD, letter.key))
        item = (letter.id, x, c)
        if cache is not None:
            cache[letter.id] = item
        out.append(item)
    return out


def translation_conjugator(oracle: SubgroupOracle, s: Word) -> Optional[Word]:
    """Some a in Cen(j) with t^a = s, or None when js is not conjugate to a translation.

    js = g·(1,c)·g^-1 is found either from a single-syllable cyclic core or
    because js = q^k with j·q a letter key up to j, where j·v_l = f^-1 (1,-2) f.
    Failing that, the root of the core is matched against the cores of j·v_l.
    """
    js = multiply(oracle, J_WORD, s)
    w, h = cyclically_reduce(oracle, js)
    found = None
    if h.is_base and len(h.parts[0]) == 1:
        found = (w, h.parts[0][0])
    else:
        p, k = maximal_root(oracle, h)
        u = multiply(oracle, J_WORD, w, p, word_invert(w))
        for letter in getattr(oracle, "letters", ()):
            if equal(oracle, u, letter.key):
                sigma = 1
            elif equal(oracle, u, multiply(oracle, J_WORD, letter.key, J_WORD)):
                sigma = -1
            else:
                continue
            found = (Word.letter(letter.id, -1), AffineMap(1, -2 * sigma * k))
            break
        else:
            for ident, x, c in _letter_cores(oracle):
                for sigma in (1, -1):
                    target = c if sigma == 1 else britton_reduce(oracle, word_invert(c))
                    y = conjugate_cores(oracle, p, target)
                    if y is None:
                        continue
                    g = britton_reduce(oracle, concat(w, y, word_invert(x), Word.letter(ident, -1)))
                    found = (g, AffineMap(1, -2 * sigma * k))
                    break
                if found:
                    break
    if found is None:
        return None
    g, tau = found
    if is_z(tau) or tau.a != 1:
        raise InternalError("js is conjugate into the affine factor but not to a translation")
    y0 = britton_reduce(oracle, concat(word_invert(g), J_WORD, g))
    if not is_affine_involution(y0):
        raise InternalError("conjugator of js does not carry j into the affine factor")
    beta = y0.parts[0][0].b
    e = AffineMap(1, -beta / 2)
    jt = AffineMap(1, -2)
    for lam in (tau.b / -2, -2 / tau.b):
        if aff_conj(jt, AffineMap(lam, 0)) == tau:
            break
    else:
        raise InternalError("no scaling carries jt onto the translation")
    a = multiply(oracle, Word.affine(AffineMap(lam, 0)), Word.affine(e), word_invert(g))
    if not (equal(oracle, multiply(oracle, word_invert(a), Word.base((T,)), a), s) and commutes(oracle, a, J_WORD)):
        raise InternalError("computed conjugator does not carry t to s inside Cen(j)")
    return a


def equiv_key(oracle: SubgroupOracle, s: Word) -> EquivKey:
    s = _require_involution(oracle, s)
    if is_affine_involution(s):
        return CLASS_OF_T
    a = translation_conjugator(oracle, s)
    if a is not None:
        return CLASS_OF_T if is_scaling(oracle, a) else ClassOfT(a)
    conj, h = cyclically_reduce(oracle, multiply(oracle, J_WORD, s))
    p, _ = maximal_root(oracle, h)
    q = multiply(oracle, conj, p, word_invert(conj))
    u = multiply(oracle, J_WORD, q)
    if order_class(oracle, u) != 2:
        raise InternalError("root of js does not come from an involution")
    return Minimal(u)


def same_key(oracle: SubgroupOracle, k1: EquivKey, k2: EquivKey) -> bool:
    if isinstance(k1, ClassOfT) and isinstance(k2, ClassOfT):
        return is_scaling(oracle, concat(k1.conjugator, word_invert(k2.conjugator)))
    if isinstance(k1, ClassOfT) or isinstance(k2, ClassOfT):
        return False
    return same_dihedral(oracle, k1.u, k2.u)


def same_dihedral(oracle: SubgroupOracle, u1: Word, u2: Word) -> bool:
    """True iff <j, u1> = <j, u2> for minimal u1, u2, i.e. u2 in {u1, u1^j}."""
    return equal(oracle, u1, u2) or equal(oracle, u1, multiply(oracle, J_WORD, u2, J_WORD))


def equivalent(oracle: SubgroupOracle, s1: Word, s2: Word) -> bool:
    return same_key(oracle, equiv_key(oracle, s1), equiv_key(oracle, s2))


def is_minimal(oracle: SubgroupOracle, s: Word) -> bool:
    key = equiv_key(oracle, s)
    return isinstance(key, Minimal) and equal(oracle, key.u, s)


def centralizer(oracle: SubgroupOracle, s: Word) -> CentralizerDesc:
    """Cen(js) for an involution s ≠ j."""
    key = equiv_key(oracle, s)
    if isinstance(key, ClassOfT):
        return BaseTranslations(key.conjugator)
    return Cyclic(multiply(oracle, J_WORD, key.u))


def _as_translation(w: Word) -> Optional[AffineMap]:
    if w.is_trivial:
        return AffineMap(1, 0)
    if w.is_base and len(w.parts[0]) == 1 and not is_z(w.parts[0][0]) and w.parts[0][0].a == 1:
        return w.parts[0][0]
    return None


def centralizer_contains(oracle: SubgroupOracle, desc: CentralizerDesc, g: Word) -> bool:
    if isinstance(desc, BaseTranslations):
        a = desc.conjugator
        return _as_translation(multiply(oracle, a, g, word_invert(a))) is not None
    return power_solve(oracle, g, desc.generator) is not None


def nth_root_involution(oracle: SubgroupOracle, target: Word, n: int) -> Optional[Word]:
    """The involution s with (js)^n = target, or None when there is none."""
    if n < 1:
        raise ValueError("root order must be positive")
    target = britton_reduce(oracle, target)
    if target.is_trivial:
        raise ValueError("the identity is not a translation j·s with s ≠ j")
    g = _as_translation(target)
    if g is not None:
        return Word.base((AffineMap(-1, -g.b / n),))
    s0 = multiply(oracle, J_WORD, target)
    if order_class(oracle, s0) != 2:
        raise ValueError("target is not of the form j·s for an involution s")
    key = equiv_key(oracle, s0)
    if isinstance(key, ClassOfT):
        a = key.conjugator
        g = _as_translation(multiply(oracle, a, target, word_invert(a)))
        if g is None:
            raise InternalError("translation class does not conjugate back to a translation")
        return multiply(oracle, word_invert(a), Word.base((AffineMap(-1, -g.b / n),)), a)
    ju = multiply(oracle, J_WORD, key.u)
    k = power_solve(oracle, target, ju)
    if k is None:
        raise InternalError("j·s0 is not a power of its minimal generator")
    if k % n:
        return None
    return multiply(oracle, J_WORD, power(oracle, ju, k // n))


def commutes(oracle: SubgroupOracle, a: Word, b: Word) -> bool:
    return equal(oracle, concat(a, b), concat(b, a))


def _euclid_length(oracle: SubgroupOracle, w: Word, level: int) -> int:
    return sum(1 for ident, _ in britton_reduce(oracle, w).letters if oracle.level(ident) == level)


def euclid_centralizer_element(
    oracle: SubgroupOracle, r: Word, s: Word, h: Word, trace: Optional[list] = None
) -> Word:
    """Shortest element of <rs, h> by alternating division of letter lengths.

    With lengths 2m of rs and k of h, write k = n·2m + l, replace h by
    (rs)^-n h (or (rs)^n h, whichever has length l) and swap roles until
    the remainder vanishes.  ``trace`` collects the (len a, len b) pairs.
    """
    rs = multiply(oracle, r, s)
    _, core = cyclically_reduce(oracle, rs)
    top, two_m = top_length(oracle, rs)
    if two_m < 2 or top_length(oracle, core) != (top, two_m):
        raise ValueError("rs must be cyclically reduced with letter length ≥ 2")
    h = britton_reduce(oracle, h)
    if top_length(oracle, h)[0] != top or _euclid_length(oracle, h, top) < 2:
        raise ValueError("h must have letter length ≥ 2")
    if not commutes(oracle, rs, h):
        raise ValueError("h does not centralize rs")

    a, b = rs, h
    while True:
        la, lb = _euclid_length(oracle, a, top), _euclid_length(oracle, b, top)
        if trace is not None:
            trace.append((la, lb))
        n, l = divmod(lb, la)
        for cand in (multiply(oracle, power(oracle, a, -n), b), multiply(oracle, power(oracle, a, n), b)):
            if _euclid_length(oracle, cand, top) == l:
                break
        else:
            raise InternalError("division step did not shorten the centralizing element")
        if l == 0:
            if not britton_reduce(oracle, cand).is_trivial:
                raise InternalError("zero-length remainder is not the identity")
            result = a
            break
        a, b = cand, a

    if not commutes(oracle, result, rs):
        raise InternalError("descent result does not centralize rs")
    if power_solve(oracle, rs, result) is None or power_solve(oracle, h, result) is None:
        raise InternalError("descent result does not generate both inputs")
    return result
