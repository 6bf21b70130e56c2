"""Exact affine maps x -> a*x + b over the rationals.

Products follow function composition: ``compose(g, h)`` applies ``h`` first.
Conjugation is ``g^h = h^-1 g h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class AffineMap:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if self.a == 0:
            raise ValueError("affine map needs a nonzero slope")

    def __call__(self, x):
        return self.a * as_rational(x) + self.b

    def __repr__(self):
        return f"aff({format_rational(self.a)},{format_rational(self.b)})"

    @property
    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    @property
    def is_involution(self) -> bool:
        return self.a == -1

    @property
    def is_translation(self) -> bool:
        return self.a == 1


IDENTITY = AffineMap(1, 0)
J = AffineMap(-1, 0)
T = AffineMap(-1, 2)
T_PRIME = AffineMap(-1, 1)


def compose(g: AffineMap, h: AffineMap) -> AffineMap:
    """Return g∘h, i.e. x -> g(h(x))."""
    return AffineMap(g.a * h.a, g.a * h.b + g.b)


def invert(g: AffineMap) -> AffineMap:
    return AffineMap(1 / g.a, -g.b / g.a)


def conjugate(g: AffineMap, h: AffineMap) -> AffineMap:
    """g^h = h^-1 ∘ g ∘ h."""
    return compose(invert(h), compose(g, h))


def affine_power(g: AffineMap, n: int) -> AffineMap:
    if g.a == 1:
        return AffineMap(1, n * g.b)
    an = g.a ** n
    return AffineMap(an, g.b * (an - 1) / (g.a - 1))


def nth_root_translation(w: AffineMap, n: int) -> AffineMap:
    """The unique involution s with (j∘s)^n = w, for a translation w ≠ id."""
    if not w.is_translation or w.b == 0:
        raise ValueError(f"{w!r} is not a nontrivial translation")
    if n < 1:
        raise ValueError("root order must be positive")
    return AffineMap(-1, -w.b / n)


def _check_involution_not_j(s: AffineMap) -> None:
    if not s.is_involution:
        raise ValueError(f"{s!r} is not an involution")
    if s.b == 0:
        raise ValueError("j itself has no A-conjugator from t")


def solve_A_conjugation(s1: AffineMap, s2: AffineMap) -> AffineMap:
    """Return a = (c, 0) in Cen(j) with s1^a = s2.

    For s = (-1, b) one has s^(c,0) = (-1, b/c), hence c = b1/b2.
    """
    _check_involution_not_j(s1)
    _check_involution_not_j(s2)
    return AffineMap(s1.b / s2.b, 0)


def fixed_point(s: AffineMap) -> Fraction:
    if not s.is_involution:
        raise ValueError(f"{s!r} is not an involution")
    return s.b / 2


def discrete_log(base: Fraction, value: Fraction) -> int | None:
    """Integer n with base**n == value, or None; base is not 0 or ±1."""
    if value == 1:
        return 0
    if value == 0 or abs(base) in (0, 1):
        return None
    sign = 1
    if abs(base) < 1:
        base, sign = 1 / base, -1
    # |base| > 1, so |base**n| increases with n and the scan terminates
    for target, s in ((value, 1), (1 / value, -1)):
        cur, n = Fraction(1), 0
        while abs(cur) < abs(target):
            cur *= base
            n += 1
        if cur == target:
            return sign * s * n
    return None
