"""Exact slope arithmetic on the Farey tessellation.

A slope q/p is stored as the primitive integer vector (q, p) with p >= 0.
The point at infinity is (1, 0); (-1, 0) normalizes to it.  The circle is
oriented clockwise as 0 -> 1 -> inf -> -3 -> -2 -> -1 -> 0, i.e. increasing
through the finite rationals, then inf, then wrapping back from -inf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CabletorusError

__all__ = [
    "Slope",
    "SlopeError",
    "TorusBoundary",
    "INF",
    "reduce",
    "parse_slope",
    "mediant",
    "is_edge",
    "det",
    "in_clockwise_interval",
    "farthest_neighbor",
    "shear",
]


class SlopeError(CabletorusError):
    pass


@dataclass(frozen=True, init=False)
class Slope:
    num: int
    den: int

    def __init__(self, num: int, den: int = 1):
        num, den = int(num), int(den)
        if num == 0 and den == 0:
            raise SlopeError("0/0 is not a slope")
        g = gcd(num, den)
        num, den = num // g, den // g
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((num, den)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise SlopeError("the infinite slope has no rational value")
        return Fraction(self.num, self.den)

    def _key(self):
        # inf sorts above every finite slope
        return (1, Fraction(0)) if self.den == 0 else (0, Fraction(self.num, self.den))

    def __lt__(self, other: "Slope") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Slope") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "Slope") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "Slope") -> bool:
        return self._key() >= other._key()

    def __str__(self) -> str:
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self})"


INF = Slope(1, 0)


def reduce(a: int, b: int) -> Slope:
    """Canonical slope a/b: gcd 1, denominator >= 0, both infinities equal."""
    return Slope(a, b)


_SLOPE_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def parse_slope(text) -> Slope:
    """Parse ``"q/p"``, an integer, or ``"inf"``/``"-inf"``."""
    if isinstance(text, Slope):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Slope(text, 1)
    if not isinstance(text, str):
        raise SlopeError(f"cannot read a slope from {text!r}")
    s = text.strip()
    if s.lower() in ("inf", "+inf", "-inf", "infinity", "-infinity", "∞", "-∞", "1/0"):
        return INF
    m = _SLOPE_RE.match(s)
    if not m:
        raise SlopeError(f"malformed slope {text!r}; expected 'q/p', an integer, or 'inf'")
    q = int(m.group(1))
    p = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0 and p == 0:
        raise SlopeError("0/0 is not a slope")
    return Slope(q, p)


def det(s: Slope, t: Slope) -> int:
    return s.num * t.den - s.den * t.num


def is_edge(s: Slope, t: Slope) -> bool:
    """True iff s and t are Farey neighbors (an integral basis of Z^2)."""
    return abs(det(s, t)) == 1


def in_clockwise_interval(x: Slope, a: Slope, b: Slope, closure: str = "open") -> bool:
    """Membership of ``x`` in the clockwise arc from ``a`` to ``b``.

    ``closure`` is one of ``"open"``, ``"closed"``, ``"left"`` ([a, b)) or
    ``"right"`` ((a, b]).
    """
    if closure not in ("open", "closed", "left", "right"):
        raise ValueError(f"unknown closure {closure!r}")
    if a == b:
        raise SlopeError("clockwise interval needs distinct endpoints")
    if x == a:
        return closure in ("closed", "left")
    if x == b:
        return closure in ("closed", "right")
    ka, kb, kx = a._key(), b._key(), x._key()
    if ka < kb:
        return ka < kx < kb
    return kx > ka or kx < kb


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def _frame(x: Slope) -> tuple[int, int, int, int]:
    """An SL(2,Z) matrix (a, b, c, d) sending x to inf."""
    g, u, v = _egcd(x.num, x.den)
    if g < 0:
        u, v = -u, -v
    # u*q + v*p = 1; second row (-p, q) kills x
    return (u, v, -x.den, x.num)


def _apply(m, s: Slope) -> Slope:
    a, b, c, d = m
    return Slope(a * s.num + b * s.den, c * s.num + d * s.den)


def _inverse(m):
    a, b, c, d = m
    return (d, -b, -c, a)


def farthest_neighbor(x: Slope, b: Slope, include_end: bool = True) -> Slope:
    """Clockwise-farthest Farey neighbor of ``x`` in (x, b] (or (x, b) when
    ``include_end`` is false)."""
    if x == b:
        raise SlopeError("farthest neighbor needs b != x")
    m = _frame(x)
    beta = _apply(m, b)
    # in the frame x = inf, neighbors are the integers and (x, b] is (-inf, beta]
    if include_end:
        k = beta.num // beta.den
    else:
        k = -((-beta.num) // beta.den) - 1
    return _apply(_inverse(m), Slope(k, 1))


def mediant(s: Slope, t: Slope) -> Slope:
    """Farey sum of s and t, choosing signs so the result lies clockwise
    strictly between s and t."""
    if s == t:
        raise SlopeError("mediant of a slope with itself")
    plus = Slope(s.num + t.num, s.den + t.den)
    if in_clockwise_interval(plus, s, t):
        return plus
    return Slope(s.num - t.num, s.den - t.den)




def shear(s: Slope, k: int) -> Slope:
    """q/p -> (q + k p)/p; fixes inf."""
    return Slope(s.num + k * s.den, s.den)


@dataclass(frozen=True)
class TorusBoundary:
    dividing_slope: Slope
    num_dividing_curves: int = 2

    def __post_init__(self):
        if self.num_dividing_curves < 2 or self.num_dividing_curves % 2:
            raise SlopeError(
                f"number of dividing curves must be even and >= 2, got {self.num_dividing_curves}"
            )
