"""High-precision floating interval oracle used to cross-check exact results.

Everything here goes through mpmath's interval type at 256 bits, evaluating
values straight from their integer data (p, t, D, q / coefficient lists), so
it shares no code path with the exact kernel it audits.  A comparison is
reported only when the two enclosures are disjoint; overlapping enclosures
mean the oracle cannot rule out equality and the caller must fall back to the
symbolic answer.
"""

from fractions import Fraction

from mpmath import iv

from k3wall.exact import QuadraticSurd, SurdSum

ORACLE_PREC = 256


def _endpoint_to_fraction(mpf_tuple):
    sign, man, exp, _ = mpf_tuple
    value = Fraction(int(man)) * Fraction(2) ** exp
    return -value if sign else value


def to_interval(value):
    """256-bit enclosure of an exact value as a (lo, hi) Fraction pair."""
    iv.prec = ORACLE_PREC
    if isinstance(value, QuadraticSurd):
        x = (iv.mpf(value.p) + iv.mpf(value.t) * iv.sqrt(value.d)) / value.q
    elif isinstance(value, SurdSum):
        x = iv.mpf(0)
        for coeff, rad in value.terms:
            c = iv.mpf(coeff.numerator) / coeff.denominator
            x += c * iv.sqrt(rad)
    else:
        f = Fraction(value)
        x = iv.mpf(f.numerator) / f.denominator
    lo_mpf, hi_mpf = x._mpi_
    return _endpoint_to_fraction(lo_mpf), _endpoint_to_fraction(hi_mpf)


def iv_sign_of_difference(a, b):
    """-1, 0-excluded comparison of a and b; None when undecidable."""
    alo, ahi = to_interval(a)
    blo, bhi = to_interval(b)
    if ahi < blo:
        return -1
    if bhi < alo:
        return 1
    return None


def iv_sign(value):
    """Sign of a value when the 256-bit enclosure excludes zero, else None."""
    lo, hi = to_interval(value)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def recheck_report(report):
    """Re-evaluate every comparison of a certificate with the 256-bit oracle.

    Returns a list of (check_id, comparison_label, exact_sign, oracle_sign)
    disagreements; boundary comparisons (oracle undecided) are skipped, since
    an enclosure can never certify an exact equality.
    """
    bad = []
    for check in report.checks:
        for comp in check.comparisons:
            oracle = iv_sign_of_difference(comp.lhs, comp.rhs)
            if oracle is None:
                continue
            if oracle != comp.sign:
                bad.append((check.id, comp.label, comp.sign, oracle))
    return bad
