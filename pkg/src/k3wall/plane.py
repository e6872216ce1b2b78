"""Geometry of the (b, w) stability half-plane.

The admissible region U sits above the boundary curve

    Gamma(b) = b^2 * (H^2/2 + 1) - 1   for b != 0,      Gamma(0) = 0,

whose graph away from b = 0 is a parabola; the closure of U additionally
picks up the vertical segment from (0, 0) down to (0, -1).  All intersections
with lines are solved against the parabola branch (the special value at b = 0
only affects membership), which is how every root in the wall analysis is a
quadratic surd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .exact import QuadraticSurd, SurdSum, surdsum_sign
from .lattice import ChernCharacter, Surface

Value = Union[Fraction, QuadraticSurd]

PLUS_INFINITY = math.inf


class RankZeroError(ValueError):
    """Projection is undefined for rank-zero classes."""


class CoincidentPointsError(ValueError):
    """No unique line through two equal points."""


class NoIntersectionError(ValueError):
    """Line misses the boundary parabola."""


class TangentError(ValueError):
    """Line is tangent to the boundary parabola."""


class NotCoprimeError(ValueError):
    """Bezout vertical lines need coprime rank and degree."""


@dataclass(frozen=True)
class PlanePoint:
    b: Value
    w: Value


@dataclass(frozen=True)
class Line:
    """Non-vertical line w = slope*b + intercept."""

    slope: Fraction
    intercept: Fraction
    label: str = ""

    def w_at(self, b: Value) -> Value:
        return self.slope * b + self.intercept

    def is_parallel(self, other: "Line") -> bool:
        return self.slope == other.slope


@dataclass(frozen=True)
class VerticalLine:
    b: Fraction
    label: str = ""


def _sign(x) -> int:
    if isinstance(x, Fraction) or isinstance(x, int):
        return (x > 0) - (x < 0)
    if isinstance(x, QuadraticSurd):
        return x._cmp(0)
    return surdsum_sign(SurdSum.of(x))


def parabola_w(b: Value, X: Surface) -> Value:
    """The quadratic branch b^2*(H^2/2 + 1) - 1, with no special case at 0."""
    return b * b * (X.hsq // 2 + 1) - 1


def gamma(b: Value, X: Surface) -> Value:
    if _is_zero(b):
        return Fraction(0)
    return parabola_w(b, X)


def _is_zero(x: Value) -> bool:
    if isinstance(x, QuadraticSurd):
        return x.p == 0 and x.t == 0
    return x == 0


def in_U(p: PlanePoint, X: Surface, closure: bool = False) -> bool:
    """Strict membership w > Gamma(b); closure mode takes the closure of U.

    The closure is w >= b^2*(H^2/2+1) - 1 everywhere: at b = 0 this keeps the
    boundary segment from (0, 0) down to (0, -1).
    """
    if closure:
        diff = SurdSum.of(p.w) - SurdSum.of(parabola_w(p.b, X))
        return surdsum_sign(diff) >= 0
    diff = SurdSum.of(p.w) - SurdSum.of(gamma(p.b, X))
    return surdsum_sign(diff) > 0


def central_charge(ch: ChernCharacter, b: Value, w: Value) -> tuple[Value, Value]:
    """(re, im) of the charge -ch2 + w*ch0 + i*(ch1 - b*ch0)."""
    re = w * ch.ch0 - ch.ch2
    im = -(b * ch.ch0) + ch.ch1
    return re, im


def nu_slope(ch: ChernCharacter, b: Value, w: Value):
    """Tilt slope -re/im, or +infinity on vanishing imaginary part."""
    re, im = central_charge(ch, b, w)
    if _is_zero(im):
        return PLUS_INFINITY
    return -_divide(re, im)


def _divide(a: Value, b: Value) -> Value:
    if isinstance(a, QuadraticSurd) or isinstance(b, QuadraticSurd):
        a = a if isinstance(a, QuadraticSurd) else QuadraticSurd.from_rational(a)
        return a / b
    return Fraction(a) / Fraction(b)


def project_pi(ch: ChernCharacter) -> PlanePoint:
    """The point (ch1/ch0, ch2/ch0) that every wall for the class crosses."""
    if ch.ch0 == 0:
        raise RankZeroError("projection needs nonzero rank")
    return PlanePoint(Fraction(ch.ch1, ch.ch0), ch.ch2 / ch.ch0)


def line_through(p1: PlanePoint, p2: PlanePoint,
                 label: str = "") -> Union[Line, VerticalLine]:
    if p1.b == p2.b:
        if p1.w == p2.w:
            raise CoincidentPointsError(f"points coincide at ({p1.b}, {p1.w})")
        return VerticalLine(Fraction(p1.b), label)
    slope = (Fraction(p2.w) - Fraction(p1.w)) / (Fraction(p2.b) - Fraction(p1.b))
    return Line(slope, Fraction(p1.w) - slope * Fraction(p1.b), label)


def line_parabola_intersect(line: Line,
                            X: Surface) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Both roots of the line against the boundary parabola, b1 <= b2.

    Clears denominators so the radicand is an integer:
    a*L*b^2 - M*b - K = 0 with a = H^2/2 + 1, M = slope*L, K = (intercept+1)*L.
    """
    a = X.hsq // 2 + 1
    den = line.slope.denominator * line.intercept.denominator // gcd(
        line.slope.denominator, line.intercept.denominator)
    m = line.slope.numerator * (den // line.slope.denominator)
    k = (line.intercept + 1).numerator * (
        den // (line.intercept + 1).denominator)
    disc = m * m + 4 * a * den * k
    if disc < 0:
        raise NoIntersectionError(f"line {line} misses the boundary")
    if disc == 0:
        raise TangentError(f"line {line} is tangent to the boundary")
    b1 = QuadraticSurd(m, -1, disc, 2 * a * den)
    b2 = QuadraticSurd(m, 1, disc, 2 * a * den)
    return b1, b2


def no_wall_verticals(rp: int, kp: int) -> tuple[Fraction, Fraction]:
    """Vertical lines b = m/n with m*rp - n*kp = -1 (resp. +1), 0 < n < rp.

    No wall for a class with rank rp and degree kp crosses these lines: the
    imaginary part of the charge there is 1/n in absolute value, which is
    minimal.  Requires gcd(rp, kp) = 1 and rp >= 2.
    """
    if rp < 2:
        raise ValueError("rank must be at least 2")
    if gcd(rp, kp) != 1:
        raise NotCoprimeError(f"gcd({rp}, {kp}) != 1")
    inv = pow(kp % rp, -1, rp)
    n_plus = (-inv) % rp
    m_plus = (1 + n_plus * kp) // rp
    n_minus = inv % rp
    m_minus = (-1 + n_minus * kp) // rp
    return Fraction(m_minus, n_minus), Fraction(m_plus, n_plus)
