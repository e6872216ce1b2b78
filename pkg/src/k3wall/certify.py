"""Genus certification: the finite inequality ledger behind "g large enough".

A scenario (r, k) qualifies at genus g exactly when a fixed list of
inequalities holds.  Four are structural (the square window for s and the
coprimality/size hypotheses), two are growth thresholds on H^2, and thirteen
are the geometric conditions: vertical-line windows around the kernel class,
the polygon slack, the placement of the alpha-line roots, origin positions,
and the two stub-line memberships.  Every verdict is decided in exact
arithmetic and ships with its witnesses, so each line of the report can be
re-checked independently.

Checks C10/C11 accept boundary hits (the closure argument); everything else
is strict, so a boundary hit there fails.  A check whose defining expression
degenerates (zero denominator at tiny genus) is reported N/A with the reason
and does not block the others.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .lattice import Surface, compute_s
from .polygon import refined_region
from .report import Check, Verdict, compare
from .walls import (
    DegenerateDenominatorError,
    Scenario,
    ell_star,
    lemma33_check,
    named_lines,
    theta_beta,
)

CHECK_ORDER = ("A1", "A2", "A3", "A4", "G1", "G2", "C1", "C2", "C3", "C4",
               "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13")

CHECK_NAMES = {
    "A1": "square_window",
    "A2": "rank_degree_coprime",
    "A3": "sections_degree_coprime",
    "A4": "degree_below_rank",
    "G1": "hsq_above_2r",
    "G2": "hsq_above_2r_rplus1",
    "C1": "kernel_window_left",
    "C2": "kernel_window_right",
    "C3": "polygon_slack",
    "C4": "b1v_kernel_bound_polynomial",
    "C5": "alpha_line_meets_boundary",
    "C6": "b2alpha_above_kernel_gap",
    "C7": "origin_above_alpha_line",
    "C8": "origin_below_tilde_line",
    "C9": "origin_below_star_line",
    "C10": "stub_line_right_inside",
    "C11": "stub_line_left_inside",
    "C12": "b2v_above_b2star",
    "C13": "b1alpha_below_b1star",
}

CHECK_DESCRIPTIONS = {
    "A1": "-2 <= v^2 < 2r - 2 for v = (r, k, s)",
    "A2": "gcd(r, k) = 1",
    "A3": "gcd(s, k) = 1",
    "A4": "k < r",
    "G1": "H^2 > 2r",
    "G2": "H^2 > 2r(r+1)",
    "C1": "k/r - 1 + 1/(r^2(r+1)) < -(k+1)/(k^2 H^2/(2r) - 1) < -(k+1)/s",
    "C2": "-1/(r+1) < -(k+1)/(k^2 H^2/(2r) - 1) < -(k+1)/s < b2_alpha",
    "C3": "2 eps_out < Q_out - Q_in for the refined polygon region",
    "C4": "-(2/k)s(s-r) + (H^2+2)(k^2(s-1) + 1/(s-1) - 2k) < 2rs(s-1)",
    "C5": "theta^2 + 2 beta (H^2+2) >= 0",
    "C6": "-k/s - 1/(s(s-1)) < b2_alpha",
    "C7": "beta - 1 < 0",
    "C8": "s/r - H^2 (k/r)(k/r - 1/2) - 1 > 0",
    "C9": "alpha > 1 for the star line w = H^2(k/r - 1/2) b + alpha - 1",
    "C10": "origin-line through the right end of the star line stays in U",
    "C11": "origin-line through the left end of the star line stays in U",
    "C12": "b2_v > b2_star",
    "C13": "b1_alpha < b1_star",
}


def _check(cid: str, comparisons=(), boundary_ok=False, na_reason="") -> Check:
    return Check(cid, CHECK_NAMES[cid], CHECK_DESCRIPTIONS[cid],
                 tuple(comparisons), boundary_ok, na_reason)


@dataclass(frozen=True)
class CertificateReport:
    r: int
    k: int
    g: int
    hsq: int
    s: int
    v_squared: int
    checks: tuple[Check, ...]
    overall: bool

    def check(self, cid: str) -> Check:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def verdicts(self) -> dict[str, Verdict]:
        return {c.id: c.verdict for c in self.checks}

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.acceptable]


def check_assumptions(r: int, k: int, X: Surface) -> tuple[list[Check], int]:
    """Structural checks A1-A4; returns them with the canonical s."""
    if r < 1 or k < 1:
        raise ValueError("need positive r and k")
    s = compute_s(r, k, X)
    v2 = k * k * X.hsq - 2 * r * s
    a1 = _check("A1", [
        compare("minus_two_le_v2", Fraction(-2), "<=", Fraction(v2)),
        compare("v2_lt_2r_minus_2", Fraction(v2), "<", Fraction(2 * r - 2)),
    ])
    a2 = _check("A2", [compare("gcd_rk", Fraction(gcd(r, k)), "==", Fraction(1))])
    a3 = _check("A3", [compare("gcd_sk", Fraction(gcd(s, k)), "==", Fraction(1))])
    a4 = _check("A4", [compare("k_lt_r", Fraction(k), "<", Fraction(r))])
    return [a1, a2, a3, a4], s


def _geometry_checks(sc: Scenario) -> list[Check]:
    r, k, s, hsq = sc.r, sc.k, sc.s, sc.X.hsq
    checks: list[Check] = []

    try:
        diagram = named_lines(sc)
    except DegenerateDenominatorError as exc:
        diagram = None
        degenerate = str(exc)

    def b_value(label):
        if diagram is None or label not in diagram.b_values:
            return None
        return diagram.b_values[label]

    # C1, C2: the vertical-line windows. The shared middle term needs
    # k^2 H^2 > 2r, and the right-hand tails need s > 0.
    mid_den = Fraction(k * k * hsq, 2 * r) - 1
    if mid_den <= 0:
        checks.append(_check("C1", na_reason="k^2 H^2 <= 2r"))
        checks.append(_check("C2", na_reason="k^2 H^2 <= 2r"))
    elif s < 1:
        checks.append(_check("C1", na_reason="s < 1"))
        checks.append(_check("C2", na_reason="s < 1"))
    else:
        mid = Fraction(-(k + 1)) / mid_den
        tail = Fraction(-(k + 1), s)
        checks.append(_check("C1", [
            compare("left_lt_mid",
                    Fraction(k, r) - 1 + Fraction(1, r * r * (r + 1)), "<", mid),
            compare("mid_lt_tail", mid, "<", tail),
        ]))
        c2 = [
            compare("vertical_lt_mid", Fraction(-1, r + 1), "<", mid),
            compare("mid_lt_tail", mid, "<", tail),
        ]
        b2a = b_value("b2_alpha")
        if b2a is not None:
            c2.append(compare("tail_lt_b2alpha", tail, "<", b2a))
            checks.append(_check("C2", c2))
        else:
            checks.append(_check("C2", na_reason="b2_alpha undefined"))

    # C3: polygon slack
    reg = refined_region(sc)
    checks.append(_check("C3", [reg.epsilon_check]))

    # C4: the polynomial form of the b1_v bound
    if k < 1 or s < 2:
        checks.append(_check("C4", na_reason="s < 2"))
    else:
        lhs = (Fraction(-2, k) * s * (s - r)
               + (hsq + 2) * (k * k * (s - 1) + Fraction(1, s - 1) - 2 * k))
        checks.append(_check("C4", [
            compare("poly_lt_2rs_sm1", lhs, "<", Fraction(2 * r * s * (s - 1)))]))

    # C5, C7: alpha-line coefficients
    try:
        theta, beta = theta_beta(sc)
    except DegenerateDenominatorError as exc:
        checks.append(_check("C5", na_reason=str(exc)))
        checks.append(_check("C6", na_reason=str(exc)))
        checks.append(_check("C7", na_reason=str(exc)))
    else:
        disc = theta * theta + 2 * beta * (hsq + 2)
        checks.append(_check("C5", [
            compare("alpha_discriminant_nonneg", disc, ">=", Fraction(0))]))
        b2a = b_value("b2_alpha")
        if b2a is None or s < 2:
            checks.append(_check("C6", na_reason="b2_alpha undefined"
                                  if s >= 2 else "s < 2"))
        else:
            checks.append(_check("C6", [
                compare("kernel_gap_lt_b2alpha",
                        Fraction(-k, s) - Fraction(1, s * (s - 1)), "<", b2a)]))
        checks.append(_check("C7", [
            compare("beta_minus_1_neg", beta - 1, "<", Fraction(0))]))

    # C8: the tilde line clears the origin
    tilde_intercept = (Fraction(s, r)
                       - hsq * Fraction(k, r) * (Fraction(k, r) - Fraction(1, 2))
                       - 1)
    checks.append(_check("C8", [
        compare("tilde_intercept_pos", tilde_intercept, ">", Fraction(0))]))

    # C9: the star line clears the origin; the chained growth bound is
    # sufficient but not necessary, so it is recorded as informational only
    star = ell_star(sc)
    alpha = star.line.intercept + 1
    chain_rhs = ((hsq + 2) * (Fraction(1, 2) - sc.delta) ** 2
                 - Fraction(hsq * hsq, hsq + 2)
                 * (Fraction(k, r) - Fraction(1, 2)) ** 2)
    checks.append(_check("C9", [
        compare("alpha_gt_1", alpha, ">", Fraction(1)),
        compare("two_alpha_ge_chain", 2 * alpha, ">=", chain_rhs,
                informational=True),
        compare("chain_gt_2", chain_rhs, ">", Fraction(2),
                informational=True),
    ]))

    # C10, C11: stub lines stay inside U (closure accepted)
    e1, e2 = lemma33_check(sc)
    checks.append(_check("C10", [e1.comparison], boundary_ok=True))
    checks.append(_check("C11", [e2.comparison], boundary_ok=True))

    # C12, C13: root orderings against the star roots
    b2v = b_value("b2_v")
    if b2v is None:
        checks.append(_check("C12", na_reason="b2_v undefined"))
    else:
        checks.append(_check("C12", [
            compare("b2v_gt_b2star", b2v, ">", star.b2)]))
    b1a = b_value("b1_alpha")
    if b1a is None:
        checks.append(_check("C13", na_reason="b1_alpha undefined"))
    else:
        checks.append(_check("C13", [
            compare("b1alpha_lt_b1star", b1a, "<", star.b1)]))

    order = {cid: i for i, cid in enumerate(CHECK_ORDER)}
    checks.sort(key=lambda c: order[c.id])
    return checks


def certify_genus(r: int, k: int, g: int) -> CertificateReport:
    """Evaluate the full ledger for (r, k) at genus g."""
    if g < 2:
        raise ValueError("need genus >= 2")
    X = Surface.of_genus(g)
    checks, s = check_assumptions(r, k, X)
    v2 = k * k * X.hsq - 2 * r * s
    checks.append(_check("G1", [
        compare("hsq_gt_2r", Fraction(X.hsq), ">", Fraction(2 * r))]))
    checks.append(_check("G2", [
        compare("hsq_gt_2r_rp1", Fraction(X.hsq), ">", Fraction(2 * r * (r + 1)))]))

    by_id = {c.id: c for c in checks}
    structural_ok = (by_id["A2"].acceptable and by_id["A4"].acceptable
                     and r >= 2)
    if structural_ok:
        checks.extend(_geometry_checks(Scenario(r, k, X, s)))
    else:
        for cid in CHECK_ORDER[6:]:
            checks.append(_check(cid, na_reason="setup hypotheses failed"))

    order = {cid: i for i, cid in enumerate(CHECK_ORDER)}
    checks.sort(key=lambda c: order[c.id])
    # N/A checks do not block: a degenerate expression at tiny genus always
    # comes with a failing growth threshold elsewhere
    overall = all(c.acceptable for c in checks)
    return CertificateReport(r, k, g, X.hsq, s, v2, tuple(checks), overall)


@dataclass(frozen=True)
class MinGenusResult:
    g_min: Optional[int]
    stable: bool
    report: Optional[CertificateReport]

    @property
    def found(self) -> bool:
        return self.g_min is not None


def min_genus(r: int, k: int, g_max: int, horizon: int = 0,
              jobs: int = 1) -> MinGenusResult:
    """Least g <= g_max passing the full ledger, scanned linearly.

    The passing set is not known to be upward closed, so no bisection:
    ``stable`` only reports that the next ``horizon`` genera also pass.
    """
    if g_max < 2:
        raise ValueError("need g_max >= 2")
    if horizon < 0:
        raise ValueError("need horizon >= 0")

    first: Optional[CertificateReport] = None
    for report in _scan(r, k, range(2, g_max + 1), jobs):
        if report.overall:
            first = report
            break
    if first is None:
        return MinGenusResult(None, False, None)
    tail = range(first.g + 1, first.g + 1 + horizon)
    stable = all(rep.overall for rep in _scan(r, k, tail, jobs))
    return MinGenusResult(first.g, stable, first)


def _scan(r: int, k: int, genera, jobs: int):
    if jobs <= 1:
        for g in genera:
            yield certify_genus(r, k, g)
        return
    genera = list(genera)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(lambda g: certify_genus(r, k, g), genera)
