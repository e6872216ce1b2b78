"""Command-line front end and the serialization layer.

Subcommands:

* ``certify``    evaluate the full inequality ledger for (r, k) at genus g
* ``min-genus``  scan upward for the least certified genus
* ``diagram``    export the named lines, boundary roots and verticals as
                 JSON (exact values) plus a plot-ready decimal CSV
* ``polygon``    triangle corners, refined region, section bounds
* ``lattice``    pairing / s / dimension queries

Every exact value is serialized alongside its correctly rounded decimal:
rationals as num/den, quadratic surds as (p, t, D, q) for (p + t*sqrt(D))/q,
radical sums as coefficient/radicand term lists.  JSON is the fidelity
format; the CSV carries decimals only.

Exit codes: 0 success / certified, 1 failed certification or non-convex
input, 2 usage error, 3 min-genus search exhausted, 4 output I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import exact
from .certify import certify_genus, min_genus
from .exact import QuadraticSurd, SurdSum, decimal_str
from .lattice import (
    MukaiVector,
    Surface,
    euler_form,
    mukai_pairing,
    mukai_square,
    theorem_dimension,
)
from .plane import gamma
from .polygon import (
    HNPolygon,
    NonConvexError,
    ZbarPoint,
    h0_bound,
    outer_triangle,
    pushforward_chi,
    refined_region,
    step1_h_bound,
)
from .report import Check, Comparison
from .walls import Scenario, enumerate_walls_above_ellstar, named_lines

FORMAT_VERSION = 1
_DEFAULTS = {"digits": 6, "horizon": 0, "precision_cap": 4096}


# ----------------------------------------------------------------------
# exact-value encoding


def encode_exact(value) -> dict:
    if isinstance(value, QuadraticSurd):
        return {"type": "surd", "p": value.p, "t": value.t,
                "D": value.d, "q": value.q}
    if isinstance(value, SurdSum):
        return {"type": "sum", "terms": [
            {"num": c.numerator, "den": c.denominator, "radicand": d}
            for c, d in value.terms]}
    f = Fraction(value)
    return {"type": "rational", "num": f.numerator, "den": f.denominator}


def decode_exact(obj: dict):
    kind = obj["type"]
    if kind == "rational":
        return Fraction(obj["num"], obj["den"])
    if kind == "surd":
        return QuadraticSurd(obj["p"], obj["t"], obj["D"], obj["q"])
    if kind == "sum":
        return SurdSum.from_terms([
            (Fraction(t["num"], t["den"]), t["radicand"])
            for t in obj["terms"]])
    raise ValueError(f"unknown exact value type {kind!r}")


def encode_value(value, digits: int) -> dict:
    return {"decimal": decimal_str(value, digits),
            "exact": encode_exact(value)}


def _encode_comparison(comp: Comparison, digits: int) -> dict:
    return {
        "label": comp.label,
        "lhs": encode_value(comp.lhs, digits),
        "op": comp.op,
        "rhs": encode_value(comp.rhs, digits),
        "sign": comp.sign,
        "verdict": str(comp.verdict),
        "informational": comp.informational,
    }


def _encode_check(check: Check, digits: int) -> dict:
    return {
        "id": check.id,
        "name": check.name,
        "description": check.description,
        "verdict": str(check.verdict),
        "boundary_ok": check.boundary_ok,
        "na_reason": check.na_reason,
        "comparisons": [_encode_comparison(c, digits)
                        for c in check.comparisons],
    }


def report_to_dict(report, digits: int = 6) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "scenario": {
            "r": report.r, "k": report.k, "g": report.g,
            "hsq": report.hsq, "s": report.s,
            "v_squared": report.v_squared,
        },
        "overall": report.overall,
        "checks": [_encode_check(c, digits) for c in report.checks],
    }


def report_table(report, digits: int = 6) -> str:
    rows = [f"scenario: r={report.r} k={report.k} g={report.g} "
            f"H^2={report.hsq} s={report.s} v^2={report.v_squared}"]
    for check in report.checks:
        detail = check.na_reason
        if not detail:
            parts = []
            for comp in check.comparisons:
                mark = "~" if comp.informational else ""
                parts.append(f"{mark}{decimal_str(comp.lhs, digits)} {comp.op} "
                             f"{decimal_str(comp.rhs, digits)}")
            detail = "; ".join(parts)
        rows.append(f"{check.id:<4} {check.name:<28} {check.verdict:<8} {detail}")
    rows.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(rows)


# ----------------------------------------------------------------------
# diagram export


def _sample_range(diagram) -> tuple[Fraction, Fraction]:
    bounds = []
    for b in diagram.b_values.values():
        lo, hi = b.interval(64)
        bounds.extend((lo, hi))
    bounds.extend(diagram.verticals.values())
    lo, hi = min(bounds), max(bounds)
    margin = (hi - lo) / 8 if hi > lo else Fraction(1, 2)
    return lo - margin, hi + margin


def diagram_to_dict(sc: Scenario, samples: int, digits: int) -> dict:
    diagram = named_lines(sc)
    lines = [{"label": name,
              "slope": encode_exact(line.slope),
              "intercept": encode_exact(line.intercept)}
             for name, line in diagram.lines.items()]
    b_values = [{"label": lab, **encode_value(val, digits)}
                for lab, val in diagram.b_values.items()]
    verticals = [{"label": lab, "value": encode_exact(val)}
                 for lab, val in diagram.verticals.items()]
    markers = []
    for lab, pt in (("pi_v", sc.pi_v()), ("pi_alpha", sc.pi_alpha()),
                    ("pi_v_mH", sc.pi_v_minus_H())):
        markers.append({"label": lab, "b": encode_exact(pt.b),
                        "w": encode_exact(pt.w)})
    walls = [{"ch2": lv.ch2,
              "slope": encode_exact(lv.line.slope),
              "intercept": encode_exact(lv.line.intercept),
              "destabilizer": [lv.destabilizer.r, lv.destabilizer.c,
                               lv.destabilizer.s]}
             for lv in enumerate_walls_above_ellstar(sc)]
    gamma_samples = []
    if samples > 0:
        lo, hi = _sample_range(diagram)
        for i in range(samples):
            b = lo + (hi - lo) * Fraction(i, max(samples - 1, 1))
            gamma_samples.append({"b": encode_exact(b),
                                  "w": encode_exact(gamma(b, sc.X))})
    return {
        "format_version": FORMAT_VERSION,
        "scenario": {"r": sc.r, "k": sc.k, "g": sc.X.genus, "hsq": sc.X.hsq,
                     "s": sc.s, "v_squared": sc.v_squared},
        "checks": [],
        "diagram": {
            "lines": lines,
            "b_values": b_values,
            "verticals": verticals,
            "markers": markers,
            "wall_levels": walls,
            "epsilons": {"eps": encode_exact(diagram.eps),
                         "eps_prime": encode_exact(diagram.eps_prime)},
            "theta": encode_exact(diagram.theta),
            "beta": encode_exact(diagram.beta),
            "gamma_samples": gamma_samples,
        },
    }


def diagram_csv_rows(data: dict, digits: int):
    def dec(obj):
        return decimal_str(decode_exact(obj), digits)

    yield ["kind", "label", "x", "y"]
    for line in data["diagram"]["lines"]:
        yield ["line", line["label"], dec(line["slope"]), dec(line["intercept"])]
    for bv in data["diagram"]["b_values"]:
        b = decode_exact(bv["exact"])
        surface = Surface(data["scenario"]["hsq"])
        yield ["point", bv["label"], decimal_str(b, digits),
               decimal_str(gamma(b, surface), digits)]
    for vert in data["diagram"]["verticals"]:
        yield ["vertical", vert["label"], dec(vert["value"]), ""]
    for mark in data["diagram"]["markers"]:
        yield ["marker", mark["label"], dec(mark["b"]), dec(mark["w"])]
    for sample in data["diagram"]["gamma_samples"]:
        yield ["gamma", "", dec(sample["b"]), dec(sample["w"])]


# ----------------------------------------------------------------------
# polygon export


def polygon_to_dict(sc: Scenario, digits: int, points=None, chi=None) -> dict:
    z1, z2 = outer_triangle(sc)
    reg = refined_region(sc)
    step1 = step1_h_bound(sc)
    default_chi = pushforward_chi(sc)
    out = {
        "format_version": FORMAT_VERSION,
        "scenario": {"r": sc.r, "k": sc.k, "g": sc.X.genus, "hsq": sc.X.hsq,
                     "s": sc.s, "v_squared": sc.v_squared},
        "checks": [],
        "polygon": {
            "z1": [encode_exact(z1.re), encode_exact(z1.im)],
            "z2": [encode_exact(z2.re), encode_exact(z2.im)],
            "z0_prime": [encode_exact(reg.z0p.re), encode_exact(reg.z0p.im)],
            "z1_prime": [encode_exact(reg.z1p.re), encode_exact(reg.z1p.im)],
            "z2_prime": [encode_exact(reg.z2p.re), encode_exact(reg.z2p.im)],
            "q_out": encode_value(reg.q_out, digits),
            "q_in": encode_value(reg.q_in, digits),
            "two_eps_out": encode_value(reg.two_eps_out, digits),
            "margin": encode_value(reg.margin, digits),
            "slack_check": _encode_comparison(reg.epsilon_check, digits),
            "refined_chain_convex": reg.chain_convex,
            "h_step1": encode_value(step1.h, digits),
            "h_step1_strict": _encode_comparison(step1.strict_check, digits),
            "chi": encode_exact(default_chi),
        },
    }
    chain = HNPolygon([ZbarPoint(Fraction(0), Fraction(0)), z1, z2]
                      if points is None else points)
    use_chi = default_chi if chi is None else chi
    bound, floor_ = h0_bound(chain, use_chi, sc.X)
    out["polygon"]["chain"] = [[encode_exact(p.re), encode_exact(p.im)]
                               for p in chain.points]
    out["polygon"]["chain_chi"] = encode_exact(use_chi)
    out["polygon"]["h0_bound"] = encode_value(bound, digits)
    out["polygon"]["h0_floor"] = floor_
    return out


def polygon_table(data: dict, digits: int) -> str:
    pg = data["polygon"]
    sc = data["scenario"]

    def dec(obj):
        return decimal_str(decode_exact(obj), digits)

    def pt(key):
        return f"({dec(pg[key][0])}, {dec(pg[key][1])})"

    lines = [
        f"scenario: r={sc['r']} k={sc['k']} g={sc['g']} H^2={sc['hsq']} "
        f"s={sc['s']} v^2={sc['v_squared']}",
        f"z1={pt('z1')} z2={pt('z2')}",
        f"z0'={pt('z0_prime')} z1'={pt('z1_prime')} z2'={pt('z2_prime')}",
        f"Q_out = {pg['q_out']['decimal']}",
        f"Q_in = {pg['q_in']['decimal']}",
        f"2*eps_out = {pg['two_eps_out']['decimal']}",
        f"slack margin = {pg['margin']['decimal']} "
        f"[{pg['slack_check']['verdict']}]",
        f"refined chain convex: {pg['refined_chain_convex']}",
        f"h (first-wall bound) = {pg['h_step1']['decimal']} "
        f"[h < r+s+1: {pg['h_step1_strict']['verdict']}]",
        f"chain chi = {pg['chain_chi']['num']}/{pg['chain_chi']['den']}",
        f"h0 bound = {pg['h0_bound']['decimal']} (floor {pg['h0_floor']})",
    ]
    return "\n".join(lines)


# ----------------------------------------------------------------------
# configuration


def load_config() -> dict:
    cfg = dict(_DEFAULTS)
    path = os.environ.get("K3WALL_CONFIG")
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key in cfg:
                    cfg[key] = int(value)
    except OSError as exc:
        raise SystemExit(f"cannot read config {path}: {exc}")
    return cfg


# ----------------------------------------------------------------------
# commands


def _emit(text: str, out_path):
    print(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_certify(args, cfg) -> int:
    digits = args.digits if args.digits is not None else cfg["digits"]
    report = certify_genus(args.r, args.k, args.g)
    if args.format == "json":
        _emit(json.dumps(report_to_dict(report, digits), indent=2), args.out)
    else:
        _emit(report_table(report, digits), args.out)
    return 0 if report.overall else 1


def cmd_min_genus(args, cfg) -> int:
    digits = args.digits if args.digits is not None else cfg["digits"]
    horizon = args.horizon if args.horizon is not None else cfg["horizon"]
    result = min_genus(args.r, args.k, args.gmax, horizon=horizon,
                       jobs=args.jobs)
    if not result.found:
        print(f"no genus <= {args.gmax} certifies (r, k) = "
              f"({args.r}, {args.k})", file=sys.stderr)
        return 3
    stable_note = ("true (horizon 0: unverified)" if horizon == 0
                   else str(result.stable).lower())
    if args.format == "json":
        payload = report_to_dict(result.report, digits)
        payload["search"] = {"g_min": result.g_min, "stable": result.stable,
                             "horizon": horizon, "g_max": args.gmax}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        header = f"g_min = {result.g_min}   stable = {stable_note}"
        _emit(header + "\n" + report_table(result.report, digits), args.out)
    return 0


def cmd_diagram(args, cfg) -> int:
    digits = args.digits if args.digits is not None else cfg["digits"]
    sc = Scenario.at_genus(args.r, args.k, args.g)
    data = diagram_to_dict(sc, args.samples, digits)
    stem = args.out or f"diagram-r{args.r}k{args.k}g{args.g}"
    if stem.endswith(".json") or stem.endswith(".csv"):
        stem = stem.rsplit(".", 1)[0]
    try:
        with open(stem + ".json", "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
        with open(stem + ".csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerows(diagram_csv_rows(data, digits))
    except OSError as exc:
        print(f"cannot write diagram files: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {stem}.json and {stem}.csv")
    return 0


def _parse_points(text: str):
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        re_str, im_str = chunk.split(",")
        points.append(ZbarPoint(Fraction(int(re_str)), Fraction(int(im_str))))
    return points


def cmd_polygon(args, cfg) -> int:
    digits = args.digits if args.digits is not None else cfg["digits"]
    sc = Scenario.at_genus(args.r, args.k, args.g)
    points = _parse_points(args.points) if args.points else None
    chi = Fraction(args.chi) if args.chi is not None else None
    try:
        data = polygon_to_dict(sc, digits, points=points, chi=chi)
    except NonConvexError as exc:
        print(f"non-convex chain: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        _emit(json.dumps(data, indent=2), args.out)
    else:
        _emit(polygon_table(data, digits), args.out)
    return 0


def _parse_vector(text: str) -> MukaiVector:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("vector needs exactly three components r,c,s")
    return MukaiVector(*parts)


def cmd_lattice(args, cfg) -> int:
    X = Surface.of_genus(args.g)
    out: dict = {"format_version": FORMAT_VERSION,
                 "scenario": {"g": args.g, "hsq": X.hsq}, "checks": []}
    lines = [f"surface: g={args.g} H^2={X.hsq}"]
    if args.v:
        v = _parse_vector(args.v)
        out["lattice"] = {"v": [v.r, v.c, v.s],
                          "v_squared": mukai_square(v, X),
                          "dimension": mukai_square(v, X) + 2}
        lines.append(f"v = {v}  v^2 = {mukai_square(v, X)}  "
                     f"dim = {mukai_square(v, X) + 2}")
        if args.u:
            u = _parse_vector(args.u)
            out["lattice"]["u"] = [u.r, u.c, u.s]
            out["lattice"]["pairing"] = mukai_pairing(v, u, X)
            out["lattice"]["euler"] = euler_form(v, u, X)
            lines.append(f"u = {u}  <v,u> = {mukai_pairing(v, u, X)}  "
                         f"chi(v,u) = {euler_form(v, u, X)}")
    elif args.r and args.k:
        sc = Scenario.at_genus(args.r, args.k, args.g)
        out["scenario"].update({"r": sc.r, "k": sc.k, "s": sc.s,
                                "v_squared": sc.v_squared})
        out["lattice"] = {
            "v": [sc.v.r, sc.v.c, sc.v.s],
            "alpha": [sc.alpha.r, sc.alpha.c, sc.alpha.s],
            "v_squared": sc.v_squared,
            "dimension": theorem_dimension(sc.r, sc.k, sc.s, sc.X),
            "chi_O_v": sc.r + sc.s,
            "gcd_sk_ok": sc.gcd_sk_ok,
        }
        lines.append(f"s = {sc.s}  v = {sc.v}  v^2 = {sc.v_squared}  "
                     f"dim = {sc.v_squared + 2}  chi(O, v) = {sc.r + sc.s}")
    else:
        print("lattice needs either --v (and optionally --u) or --r/--k",
              file=sys.stderr)
        return 2
    if args.format == "json":
        _emit(json.dumps(out, indent=2), args.out)
    else:
        _emit("\n".join(lines), args.out)
    return 0


# ----------------------------------------------------------------------
# argument parsing


def _add_common(sub, *, genus=True):
    sub.add_argument("--format", choices=("table", "json"), default="table")
    sub.add_argument("--digits", type=int, default=None,
                     help="decimal digits in rendered values")
    sub.add_argument("--out", default=None, help="also write output to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3wall",
        description="Exact wall-and-chamber geometry and genus certification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="evaluate the ledger at one genus")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("min-genus", help="least certified genus <= gmax")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--horizon", type=int, default=None,
                   help="verify this many following genera as well")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_min_genus)

    p = sub.add_parser("diagram", help="export lines/roots/verticals")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--samples", type=int, default=33,
                   help="boundary curve sample count (0 omits the curve)")
    _add_common(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("polygon", help="triangle, refined region, bounds")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--points", default=None,
                   help="integral chain 're,im;re,im;...' from the origin")
    p.add_argument("--chi", default=None,
                   help="chi for the custom chain (integer or p/q)")
    _add_common(p)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("lattice", help="pairing / s / dimension queries")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--v", default=None, help="vector 'r,c,s'")
    p.add_argument("--u", default=None, help="second vector 'r,c,s'")
    _add_common(p)
    p.set_defaults(func=cmd_lattice)

    return parser


def main(argv=None) -> int:
    cfg = load_config()
    exact.set_default_bit_cap(cfg["precision_cap"])
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
