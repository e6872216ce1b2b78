"""Polygon bounds on global sections in the limit-charge plane.

Working in the plane with coordinates (re, im) = (-ch2, ch1*H/H^2), the
number of global sections of a push-forward class is bounded by

    h0  <=  chi/2 + (1/2) * sum of ||p_i - p_(i-1)||

over the chain of extremal points of its filtration polygon, measured in the
stretched norm ||x + iy|| = sqrt(x^2 + (2H^2 + 4) y^2).  The chain is trapped
in the triangle with corners at the origin, z1 = (-s + r, k) and
z2 = (H^2 (r/2 - k), r); shrinking it strictly inside loses a whole unit of
slack (the refined five-point region and the eps_out balance below).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import SurdSum
from .lattice import Surface
from .report import Comparison, Verdict, compare
from .walls import Scenario


class NonConvexError(ValueError):
    """Chain is not a convex non-decreasing polygon."""


class DegenerateTriangleError(ValueError):
    """Triangle has zero area."""


@dataclass(frozen=True)
class ZbarPoint:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __sub__(self, other: "ZbarPoint") -> "ZbarPoint":
        return ZbarPoint(self.re - other.re, self.im - other.im)

    def cross(self, other: "ZbarPoint") -> Fraction:
        return self.re * other.im - self.im * other.re


ORIGIN = ZbarPoint(Fraction(0), Fraction(0))


def nonstd_norm(p: ZbarPoint, X: Surface) -> SurdSum:
    """The stretched length sqrt(re^2 + (2H^2+4) im^2) as an exact value."""
    return SurdSum.sqrt(p.re * p.re + (2 * X.hsq + 4) * p.im * p.im)


def segment_norm(a: ZbarPoint, b: ZbarPoint, X: Surface) -> SurdSum:
    return nonstd_norm(b - a, X)


def chain_is_convex(points: Sequence[ZbarPoint]) -> bool:
    """Non-decreasing im and clockwise-only turns (slopes -re/im decreasing).

    Collinear consecutive steps must point the same way: a reversal is not a
    convex chain even though its cross product vanishes.
    """
    steps = [q - p for p, q in zip(points, points[1:])
             if q.re != p.re or q.im != p.im]
    if any(s.im < 0 for s in steps):
        return False
    for a, b in zip(steps, steps[1:]):
        c = a.cross(b)
        if c > 0:
            return False
        if c == 0 and a.re * b.re + a.im * b.im < 0:
            return False
    return True


@dataclass(frozen=True)
class HNPolygon:
    """Chain of extremal points from the origin to the total class."""

    points: tuple[ZbarPoint, ...]

    def __init__(self, points: Sequence[Union[ZbarPoint, tuple]]):
        pts = tuple(p if isinstance(p, ZbarPoint) else ZbarPoint(*p)
                    for p in points)
        if not pts or pts[0] != ORIGIN:
            raise ValueError("chain must start at the origin")
        object.__setattr__(self, "points", pts)

    @property
    def convex(self) -> bool:
        return chain_is_convex(self.points)

    def length(self, X: Surface) -> SurdSum:
        total = SurdSum.zero()
        for a, b in zip(self.points, self.points[1:]):
            total = total + segment_norm(a, b, X)
        return total


def h0_bound(poly: HNPolygon, chi: Fraction, X: Surface) -> tuple[SurdSum, int]:
    """Exact section bound chi/2 + length/2 and its floor."""
    if not poly.convex:
        raise NonConvexError(f"chain {poly.points} is not convex")
    bound = poly.length(X) * Fraction(1, 2) + Fraction(chi) / 2
    return bound, bound.floor()


def outer_triangle(sc: Scenario) -> tuple[ZbarPoint, ZbarPoint]:
    """Corners z1 (first-wall class) and z2 (total push-forward class)."""
    z1 = ZbarPoint(Fraction(-sc.s + sc.r), Fraction(sc.k))
    z2 = ZbarPoint(Fraction(sc.X.hsq * sc.r, 2) - sc.X.hsq * sc.k, Fraction(sc.r))
    return z1, z2


def pushforward_chi(sc: Scenario) -> Fraction:
    """chi of the push-forward class: k*H^2 - r*H^2/2."""
    return sc.k * sc.X.hsq - Fraction(sc.r * sc.X.hsq, 2)


def point_in_triangle(p: ZbarPoint, z1: ZbarPoint, z2: ZbarPoint,
                      strict: bool = False) -> bool:
    """Exact containment of p in the triangle with corners o, z1, z2."""
    orient = z1.cross(z2)
    if orient == 0:
        raise DegenerateTriangleError("corners are collinear")
    flip = 1 if orient > 0 else -1
    signs = [
        flip * z1.cross(p),                       # edge o -> z1
        flip * (z2 - z1).cross(p - z1),           # edge z1 -> z2
        flip * (ORIGIN - z2).cross(p - z2),       # edge z2 -> o
    ]
    if strict:
        return all(s > 0 for s in signs)
    return all(s >= 0 for s in signs)


@dataclass(frozen=True)
class RefinedRegion:
    """The five-point cut of the outer triangle and its slack balance."""

    z1: ZbarPoint
    z2: ZbarPoint
    z0p: ZbarPoint
    z1p: ZbarPoint
    z2p: ZbarPoint
    q_out: SurdSum
    q_in: SurdSum
    two_eps_out: SurdSum
    margin: SurdSum              # q_out - q_in - 2*eps_out
    epsilon_check: Comparison    # 2*eps_out < q_out - q_in
    chain_convex: bool

    @property
    def eps_out(self) -> SurdSum:
        return self.two_eps_out * Fraction(1, 2)


def refined_region(sc: Scenario) -> RefinedRegion:
    """Corner points, outer/inner lengths and the slack inequality.

    z0p cuts the segment o-z1 at height k-1, z2p cuts z1-z2 at height k+1;
    an integral chain strictly inside the triangle stays inside the chain
    o, z0p, z1p, z2p, z2, whose length is q_in.
    """
    r, k, s, X = sc.r, sc.k, sc.s, sc.X
    z1, z2 = outer_triangle(sc)
    z0p = ZbarPoint(Fraction((-s + r) * (k - 1), k), Fraction(k - 1))
    z1p = ZbarPoint(Fraction(-s + r + 1), Fraction(k))
    a = -k * X.hsq + Fraction(r * X.hsq, 2) + s - r
    z2p = ZbarPoint(a / (r - k) - s + r, Fraction(k + 1))

    q_out = segment_norm(ORIGIN, z1, X) + segment_norm(z1, z2, X)
    q_in = (segment_norm(ORIGIN, z0p, X) + segment_norm(z0p, z1p, X)
            + segment_norm(z1p, z2p, X) + segment_norm(z2p, z2, X))
    two_eps_out = q_out + (pushforward_chi(sc) - 2 * (r + s))
    margin = q_out - q_in - two_eps_out
    check = compare("polygon_slack", two_eps_out, "<", q_out - q_in,
                    sign=-margin.sign())
    convex = chain_is_convex((ORIGIN, z0p, z1p, z2p, z2))
    return RefinedRegion(z1, z2, z0p, z1p, z2p, q_out, q_in, two_eps_out,
                         margin, check, convex)


def telescoped_margin(sc: Scenario) -> SurdSum:
    """q_out - q_in through the four-radical telescoped expression.

    Independent of the segment-norm route: each term is the stretched length
    of a height-one step along the two triangle sides.
    """
    r, k, s, X = sc.r, sc.k, sc.s, sc.X
    stretch = 2 * X.hsq + 4
    u = Fraction(s - r, k)
    a = (-k * X.hsq + Fraction(r * X.hsq, 2) + s - r) / (r - k)
    return (SurdSum.sqrt(u * u + stretch)
            - SurdSum.sqrt((u - 1) ** 2 + stretch)
            + SurdSum.sqrt(a * a + stretch)
            - SurdSum.sqrt((a - 1) ** 2 + stretch))


@dataclass(frozen=True)
class SectionBound:
    h: SurdSum
    strict_check: Comparison


def step1_h_bound(sc: Scenario) -> SectionBound:
    """First-wall section bound (r+s)/2 + sqrt((r-s)^2 + k^2(2H^2+4))/2.

    The strict check h < r+s+1 pins the section count of the first-wall
    class to exactly r+s.
    """
    r, k, s, X = sc.r, sc.k, sc.s, sc.X
    rad = (r - s) ** 2 + k * k * (2 * X.hsq + 4)
    h = SurdSum.of(Fraction(r + s, 2)) + SurdSum.sqrt(rad) * Fraction(1, 2)
    check = compare("h_lt_r_plus_s_plus_1", h, "<", Fraction(r + s + 1))
    return SectionBound(h, check)
