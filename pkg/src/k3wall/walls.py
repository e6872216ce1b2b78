"""Named lines of the first-wall analysis and their exact boundary data.

For a scenario (r, k, X) with its canonical s, five lines organise the wall
geometry of the push-forward class:

* ell_v        through the origin and the projection of v = (r, k, s);
* ell_alpha    through the projections of v(-H) and the kernel class
               alpha = (s, -k, r);
* ell_v_mH     through the origin and the projection of v(-H);
* ell_tilde    through the projections of v and v(-H) -- the topmost wall;
* ell_star     the lowest line parallel to ell_tilde whose two boundary
               roots stay within delta = 1/(r^2(r+1)) of (k-r)/r and k/r.

All ten intersection b-values with the boundary parabola are quadratic surds
and every ordering claim about them is decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import QuadraticSurd
from .lattice import (
    ChernCharacter,
    MukaiVector,
    Surface,
    alpha_class,
    compute_s,
    mukai_square,
    pushforward_class,
    twist_minus_H,
)
from .plane import (
    Line,
    PlanePoint,
    gamma,
    line_parabola_intersect,
    line_through,
    no_wall_verticals,
)
from .report import Comparison, Verdict, compare


class DegenerateDenominatorError(ValueError):
    """The alpha-line coefficients are undefined: s(k-r) + kr = 0."""


@dataclass(frozen=True)
class Scenario:
    """A choice of (r, k) with k < r coprime on a surface X, plus s."""

    r: int
    k: int
    X: Surface
    s: int

    @staticmethod
    def build(r: int, k: int, X: Surface) -> "Scenario":
        if r < 2 or k < 1 or k >= r:
            raise ValueError("need 0 < k < r")
        if gcd(r, k) != 1:
            raise ValueError("need gcd(r, k) = 1")
        return Scenario(r, k, X, compute_s(r, k, X))

    @staticmethod
    def at_genus(r: int, k: int, g: int) -> "Scenario":
        return Scenario.build(r, k, Surface.of_genus(g))

    @property
    def gcd_sk_ok(self) -> bool:
        return gcd(self.s, self.k) == 1

    @property
    def v(self) -> MukaiVector:
        return MukaiVector(self.r, self.k, self.s)

    @property
    def alpha(self) -> MukaiVector:
        return alpha_class(self.r, self.k, self.s)

    @property
    def v_squared(self) -> int:
        return mukai_square(self.v, self.X)

    def ch_v(self) -> ChernCharacter:
        return self.v.chern()

    def ch_v_minus_H(self) -> ChernCharacter:
        return twist_minus_H(self.v, self.X)

    def ch_pushforward(self) -> ChernCharacter:
        return pushforward_class(self.r, self.k, self.X)

    def pi_v(self) -> PlanePoint:
        return PlanePoint(Fraction(self.k, self.r), Fraction(self.s - self.r, self.r))

    def pi_alpha(self) -> PlanePoint:
        return PlanePoint(Fraction(-self.k, self.s), Fraction(self.r - self.s, self.s))

    def pi_v_minus_H(self) -> PlanePoint:
        return PlanePoint(
            Fraction(self.k - self.r, self.r),
            Fraction(self.s - self.r, self.r)
            - Fraction(self.k * self.X.hsq, self.r) + Fraction(self.X.hsq, 2))

    @property
    def delta(self) -> Fraction:
        return Fraction(1, self.r * self.r * (self.r + 1))

    @property
    def wall_slope(self) -> Fraction:
        """Common slope of ell_star, ell_tilde and every push-forward wall."""
        return Fraction(self.X.hsq * (2 * self.k - self.r), 2 * self.r)


@dataclass(frozen=True)
class EllStar:
    line: Line
    b1: QuadraticSurd
    b2: QuadraticSurd
    eps: Fraction
    eps_prime: Fraction


def ell_star(sc: Scenario) -> EllStar:
    """Lowest line of the wall slope whose boundary roots straddle the
    targets (k-r)/r + delta and k/r - delta.

    The binding target is itself a root, so both roots are rational and so
    are the gaps eps = k/r - b2 and eps' = b1 - (k-r)/r.
    """
    m = sc.wall_slope
    left = Fraction(sc.k - sc.r, sc.r) + sc.delta
    right = Fraction(sc.k, sc.r) - sc.delta
    intercept = max(gamma(t, sc.X) - m * t for t in (left, right))
    line = Line(m, intercept, "ell_star")
    b1, b2 = line_parabola_intersect(line, sc.X)
    eps = Fraction(sc.k, sc.r) - b2.to_fraction()
    eps_prime = b1.to_fraction() - Fraction(sc.k - sc.r, sc.r)
    assert max(eps, eps_prime) == sc.delta
    return EllStar(line, b1, b2, eps, eps_prime)


def theta_beta(sc: Scenario) -> tuple[Fraction, Fraction]:
    """Slope theta and offset beta with ell_alpha: w = theta*b + beta - 1."""
    r, k, s, hsq = sc.r, sc.k, sc.s, sc.X.hsq
    den = s * (k - r) + k * r
    if den == 0:
        raise DegenerateDenominatorError(f"s(k-r) + kr = 0 at s={s}")
    theta = Fraction(s * s - r * r - s * k * hsq, den) + Fraction(r * s * hsq, 2 * den)
    beta = Fraction(r * (k - r) + s * k - k * k * hsq, den) + Fraction(k * r * hsq, 2 * den)
    return theta, beta


@dataclass(frozen=True)
class WallDiagram:
    scenario: Scenario
    lines: dict[str, Line]
    b_values: dict[str, QuadraticSurd]
    eps: Fraction
    eps_prime: Fraction
    theta: Fraction
    beta: Fraction
    verticals: dict[str, Fraction]
    missing: tuple[str, ...] = ()


_LINE_ROOTS = {
    "ell_star": ("b1_star", "b2_star"),
    "ell_tilde": ("b1_tilde", "b2_tilde"),
    "ell_v": ("b1_v", "b2_v"),
    "ell_alpha": ("b1_alpha", "b2_alpha"),
    "ell_v_mH": ("b1_v_mH", "b2_v_mH"),
}


def named_lines(sc: Scenario) -> WallDiagram:
    """All five named lines, their boundary roots, and the no-wall verticals."""
    star = ell_star(sc)
    origin = PlanePoint(Fraction(0), Fraction(0))
    pi_v, pi_m = sc.pi_v(), sc.pi_v_minus_H()

    theta, beta = theta_beta(sc)
    ell_alpha = Line(theta, beta - 1, "ell_alpha")
    # the closed-form coefficients must reproduce the line through both points
    assert ell_alpha.w_at(pi_m.b) == pi_m.w
    if sc.s != 0:
        pi_a = sc.pi_alpha()
        assert ell_alpha.w_at(pi_a.b) == pi_a.w

    ell_v = line_through(origin, pi_v, "ell_v")
    ell_v_mH = line_through(origin, pi_m, "ell_v_mH")
    ell_tilde = line_through(pi_v, pi_m, "ell_tilde")
    assert isinstance(ell_v, Line) and isinstance(ell_v_mH, Line)
    assert isinstance(ell_tilde, Line) and ell_tilde.slope == sc.wall_slope

    lines = {
        "ell_star": star.line,
        "ell_tilde": ell_tilde,
        "ell_v": ell_v,
        "ell_alpha": ell_alpha,
        "ell_v_mH": ell_v_mH,
    }
    b_values: dict[str, QuadraticSurd] = {
        "b1_star": star.b1, "b2_star": star.b2,
    }
    missing: list[str] = []
    for name, labels in _LINE_ROOTS.items():
        if name == "ell_star":
            continue
        try:
            roots = line_parabola_intersect(lines[name], sc.X)
        except ValueError:
            missing.extend(labels)
            continue
        b_values[labels[0]], b_values[labels[1]] = roots

    b_E = no_wall_verticals(sc.r, sc.k)
    verticals = {
        "b_E_minus": b_E[0], "b_E_plus": b_E[1],
        "b_F1_minus": b_E[0],
    }
    if sc.s >= 2 and sc.gcd_sk_ok:
        b_KE = no_wall_verticals(sc.s, -sc.k)
        verticals["b_KE_minus"], verticals["b_KE_plus"] = b_KE
    b_F2 = no_wall_verticals(sc.r, sc.k - sc.r)
    verticals["b_F2_plus"] = b_F2[1]
    # the k = r-1 twist needs the substitute line b = -1/(r+1) instead of the
    # Bezout vertical for (r, k-r)
    verticals["b_EmH_plus"] = (Fraction(-1, sc.r + 1) if sc.k == sc.r - 1
                               else b_F2[1])

    return WallDiagram(sc, lines, b_values, star.eps, star.eps_prime,
                       theta, beta, verticals, tuple(missing))


@dataclass(frozen=True)
class OrderingReport:
    comparisons: tuple[Comparison, ...]
    missing: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.missing and all(c.satisfied for c in self.comparisons)

    def failures(self) -> list[Comparison]:
        return [c for c in self.comparisons if not c.satisfied]


def ordering_check(diagram: WallDiagram, sc: Scenario) -> OrderingReport:
    """Every ordering claim about the named b-values, decided exactly.

    Strict comparisons that land on equality come back BOUNDARY and do not
    count as passed; non-strict ones do.
    """
    b = diagram.b_values
    left = Fraction(sc.k - sc.r, sc.r)
    right = Fraction(sc.k, sc.r)
    ks = Fraction(sc.k, sc.s) if sc.s else None
    comps: list[Comparison] = []

    def need(*labels):
        return all(lab in b for lab in labels)

    comps.append(compare("origin_below_ellstar", Fraction(0), "<",
                         diagram.lines["ell_star"].intercept))
    comps.append(compare("gap_left_le_delta",
                         b["b1_star"] - left, "<=", sc.delta))
    comps.append(compare("gap_right_le_delta",
                         right - b["b2_star"], "<=", sc.delta))
    comps.append(compare("left_lt_b1star", left, "<", b["b1_star"]))
    comps.append(compare("b1star_lt_b2star", b["b1_star"], "<", b["b2_star"]))
    comps.append(compare("b2star_lt_right", b["b2_star"], "<", right))
    comps.append(compare("tilde_above_ellstar",
                         diagram.lines["ell_star"].intercept, "<=",
                         diagram.lines["ell_tilde"].intercept))
    if need("b1_tilde", "b2_tilde"):
        comps.append(compare("left_le_b1tilde", left, "<=", b["b1_tilde"]))
        comps.append(compare("b1tilde_lt_b1star", b["b1_tilde"], "<", b["b1_star"]))
        comps.append(compare("b2star_lt_b2tilde", b["b2_star"], "<", b["b2_tilde"]))
        comps.append(compare("b2tilde_le_right", b["b2_tilde"], "<=", right))
    if need("b1_v", "b2_v") and sc.s >= 2:
        comps.append(compare("b1v_lt_kernel_gap", b["b1_v"], "<",
                             -ks + Fraction(1, sc.s * (sc.s - 1))))
        comps.append(compare("b2star_lt_b2v", b["b2_star"], "<", b["b2_v"]))
        comps.append(compare("b2v_le_right", b["b2_v"], "<=", right))
    if need("b1_alpha", "b2_alpha") and sc.s >= 2:
        comps.append(compare("left_le_b1alpha", left, "<=", b["b1_alpha"]))
        comps.append(compare("b1alpha_lt_b1star", b["b1_alpha"], "<", b["b1_star"]))
        comps.append(compare("kernel_gap_lt_b2alpha",
                             -ks - Fraction(1, sc.s * (sc.s - 1)), "<",
                             b["b2_alpha"]))
    if need("b1_v_mH", "b2_v_mH"):
        comps.append(compare("b1vmH_neg", b["b1_v_mH"], "<", Fraction(0)))
        comps.append(compare("b2vmH_pos", Fraction(0), "<", b["b2_v_mH"]))
        comps.append(compare("left_le_b1vmH", left, "<=", b["b1_v_mH"]))
        comps.append(compare("b1vmH_lt_b1star", b["b1_v_mH"], "<", b["b1_star"]))
        if need("b1_alpha"):
            comps.append(compare("b1vmH_le_b1alpha", b["b1_v_mH"], "<=",
                                 b["b1_alpha"]))
    return OrderingReport(tuple(comps), diagram.missing)


@dataclass(frozen=True)
class WallLevel:
    ch2: int
    line: Line
    destabilizer: MukaiVector


def enumerate_walls_above_ellstar(sc: Scenario) -> list[WallLevel]:
    """Walls for the push-forward class lying on or above ell_star.

    Each wall is the line of the common slope through the projection of a
    destabilizer with invariants (r, k, ch2); ch2 is capped at s - r by the
    -2 bound on the destabilizer's square, and decreasing ch2 lowers the wall
    by 1/r per step, so the lowest admissible level is reached quickly.
    """
    star_intercept = ell_star(sc).line.intercept
    m = sc.wall_slope
    levels = []
    ch2 = sc.s - sc.r
    while True:
        intercept = Fraction(ch2, sc.r) - m * Fraction(sc.k, sc.r)
        if intercept < star_intercept:
            break
        f1 = MukaiVector(sc.r, sc.k, sc.r + ch2)
        levels.append(WallLevel(ch2, Line(m, intercept, f"wall_ch2_{ch2}"), f1))
        ch2 -= 1
    return levels


@dataclass(frozen=True)
class StubLineCheck:
    target_b: Fraction
    point_w: Fraction
    gamma_at_target: Fraction
    verdict: Verdict
    comparison: Comparison


def _stub_check(label: str, stub_slope: Fraction, target_b: Fraction,
                X: Surface) -> StubLineCheck:
    w = stub_slope * target_b
    g = gamma(target_b, X)
    comp = compare(label, w, ">", g)
    # BOUNDARY marks a point on the edge of U, acceptable by closure
    return StubLineCheck(target_b, w, g, comp.verdict, comp)


def lemma33_check(sc: Scenario) -> tuple[StubLineCheck, StubLineCheck]:
    """Lines through the origin and the ends of ell_star stay inside U.

    The first line joins the origin to ell_star at b = k/r and is tested on
    the vertical b = k/r - 1/(r(r-1)); the second joins the origin to
    ell_star at b = (k-r)/r, tested at b = (k-r)/r + 1/(r(r-1)).  For r = 2
    both verticals collapse to b = 0 where the test point is the origin,
    a boundary hit accepted by closure.
    """
    star = ell_star(sc).line
    r, k = sc.r, sc.k
    w1 = star.w_at(Fraction(k, r))
    w2 = star.w_at(Fraction(k - r, r))
    gap = Fraction(1, r * (r - 1))
    e1 = _stub_check("stub_right_inside_U",
                     w1 * Fraction(r, k), Fraction(k, r) - gap, sc.X)
    e2 = _stub_check("stub_left_inside_U",
                     w2 * Fraction(r, k - r), Fraction(k - r, r) + gap, sc.X)
    return e1, e2
