"""Exact wall-and-chamber geometry and genus certification for rank-one
K3 moduli.

The package decides, in exact arithmetic, whether a genus is large enough
for the first-wall restriction argument to apply to a pair (r, k): it builds
the named lines of the stability half-plane, their boundary roots as
quadratic surds, the section bounds coming from the filtration polygon, and
evaluates the complete inequality ledger with reproducible witnesses.
"""

from .certify import CertificateReport, MinGenusResult, certify_genus, min_genus
from .exact import (
    PrecisionExhausted,
    QuadraticSurd,
    Rational,
    SurdSum,
    sqrt_normalize,
    surd_compare,
    surdsum_sign,
)
from .lattice import (
    ChernCharacter,
    MukaiVector,
    Surface,
    alpha_class,
    compute_s,
    euler_form,
    mukai_pairing,
    mukai_square,
    pushforward_class,
    theorem_dimension,
    twist_minus_H,
)
from .plane import (
    Line,
    PlanePoint,
    VerticalLine,
    central_charge,
    gamma,
    in_U,
    line_parabola_intersect,
    line_through,
    no_wall_verticals,
    nu_slope,
    project_pi,
)
from .polygon import (
    HNPolygon,
    ZbarPoint,
    h0_bound,
    nonstd_norm,
    outer_triangle,
    point_in_triangle,
    refined_region,
    step1_h_bound,
)
from .report import Check, Comparison, Verdict
from .walls import (
    Scenario,
    WallDiagram,
    ell_star,
    enumerate_walls_above_ellstar,
    lemma33_check,
    named_lines,
    ordering_check,
)

__version__ = "0.1.0"
