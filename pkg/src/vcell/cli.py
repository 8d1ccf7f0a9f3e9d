"""Command-line entry point.

Every command writes JSON (or CSV/SVG where noted) to ``--out`` or stdout.
Exit status is 0 on success, 1 when a verification fails and 2 on bad usage.
Rational inputs are written ``A/B``; decimal literals are rejected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import dualvol, fixtures, forms, planar, svg, vandermonde
from .exact import ParseError, rat, rat_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_point(text: str) -> tuple:
    """``"A/B,C/D"`` -> (Fraction, Fraction)."""
    parts = [p for p in text.split(",")]
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated rationals, got {text!r}")
    try:
        return tuple(rat(p) for p in parts)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def parse_vertices(text: str) -> list:
    """``"0,0;1,0;0,1"`` -> list of points."""
    return [parse_point(chunk) for chunk in text.split(";") if chunk.strip()]


@dataclass
class RunConfig:
    command: str
    out: Path = None
    fmt: str = "json"
    seed: int = 0
    samples: int = 100
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "svg"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if not 1 <= self.samples <= 10**6:
            raise UsageError("--samples must be in [1, 10^6]")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")
        if self.out is not None:
            parent = self.out.parent
            if not parent.is_dir():
                raise UsageError(f"output directory {parent} does not exist")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        options = {k: v for k, v in vars(args).items()
                   if k not in ("command", "out", "format", "seed", "samples", "handler")}
        out = Path(args.out) if args.out else None
        return cls(args.command, out, args.format, args.seed, args.samples, options)


def _emit(cfg: RunConfig, payload) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _form_json(form: forms.RationalTwoForm) -> dict:
    return {
        "numerator": str(form.numerator),
        "factors": [[str(p), m] for p, m in form.factors],
        "orientation": form.orientation,
        "data": form.to_json(),
    }


def _oneform_str(w: forms.OneFormT) -> str:
    return f"({w.coeff.numerator_poly()}) / ({w.coeff.denominator_poly()}) dt"


def _need_n(n, least=3):
    if n is None or n < least:
        raise UsageError(f"--n must be at least {least}")


# ---------------------------------------------------------------------------
# commands


def cmd_boundary(cfg: RunConfig) -> int:
    n, d = cfg.options["n"], cfg.options["d"]
    if n is None or d is None or not (n >= d - 1 >= 2):
        raise UsageError("boundary needs n >= d - 1 >= 2")
    if cfg.options.get("count_new"):
        _emit(cfg, f"{vandermonde.new_hypersurface_count(n, d)}\n")
        return EXIT_OK
    vectors = vandermonde.enumerate_multiplicity_vectors(n, d)
    if d >= 4 and cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["kind", "m"] + [f"x{i}" for i in range(1, d - 1)]
                        + [f"p{j}" for j in range(2, d + 1)])
        for mult in vectors:
            patch = vandermonde.boundary_patch(mult)
            for params in vandermonde.sample_patch_params(mult, cfg.samples, cfg.seed):
                coords = patch(params)
                writer.writerow([mult.kind, " ".join(map(str, mult.m))]
                                + [rat_str(v) for v in params] + [rat_str(v) for v in coords])
        _emit(cfg, buf.getvalue())
        return EXIT_OK
    payload = {
        "n": n,
        "d": d,
        "multiplicity_vectors": [v.to_json() for v in vectors],
        "new_hypersurfaces": vandermonde.new_hypersurface_count(n, d),
    }
    if d == 3:
        payload["equations"] = {f"b_{k}": str(planar.boundary_poly(k)) for k in range(2, n + 1)}
    _emit(cfg, payload)
    return EXIT_OK


def _spurious_certificates(cf: planar.CanonicalForm) -> list:
    names = {planar.chord_to_top(k): f"l(c_{k},(1,1))" for k in range(3, cf.n + 1)}
    out = []
    for factor, _ in cf.cancelled:
        out.append(f"spurious factor {names.get(factor, str(factor))} cancelled")
    return out


def _residue_rows(n: int, form: forms.RationalTwoForm) -> list:
    rows = []
    for k in range(2, n + 1):
        curve = planar.residue_curve(k)
        w = forms.residue(form, curve)
        orders = w.poles()
        lo, hi = planar.boundary_arc(n, k)
        rows.append({
            "curve": curve.name,
            "arc": [rat_str(lo), rat_str(hi)],
            "residue": _oneform_str(w),
            "simple_poles": all(m == 1 for _, m in orders.roots) and orders.infinity <= 1,
            "sign_vs_segment": w.sign_relative_to(forms.segment_form(lo, hi)),
        })
    return rows


def cmd_canonical(cfg: RunConfig) -> int:
    n = cfg.options["n"]
    _need_n(n)
    cf = planar.canonical_form(n)
    report = forms.is_logarithmic(cf.combined, planar.boundary_curves(n))
    residues = _residue_rows(n, cf.combined)
    payload = {
        "n": n,
        "summands": [_form_json(s) for s in cf.summands],
        "combined": _form_json(cf.combined),
        "certificates": _spurious_certificates(cf),
        "logarithmic": report.to_json(),
        "residues": residues,
    }
    _emit(cfg, payload)
    ok = report.logarithmic and all(r["simple_poles"] for r in residues)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_plot(cfg: RunConfig) -> int:
    n = cfg.options["n"]
    _need_n(n)
    _emit(cfg, svg.cell_svg(n))
    return EXIT_OK


def cmd_membership(cfg: RunConfig) -> int:
    n = cfg.options["n"]
    _need_n(n)
    if cfg.options.get("point"):
        point = parse_point(cfg.options["point"])
        _emit(cfg, {"n": n, "point": [rat_str(v) for v in point], "label": planar.membership(n, point)})
        return EXIT_OK
    counts = {planar.INSIDE: 0, planar.ON_BOUNDARY: 0, planar.OUTSIDE: 0}
    for x in vandermonde.sample_simplex(n, cfg.samples, cfg.seed):
        counts[planar.membership(n, vandermonde.vandermonde_image(x, 3))] += 1
    _emit(cfg, {"n": n, "samples": cfg.samples, "seed": cfg.seed, "counts": counts})
    return EXIT_OK if counts[planar.OUTSIDE] == 0 else EXIT_FAIL


def _named_form(cfg: RunConfig):
    name, n = cfg.options.get("form"), cfg.options.get("n")
    if name:
        table = forms.fixture_forms()
        table["nonlog"] = forms.RationalTwoForm(
            forms.MultiPoly.const(forms.XY, 1), [(forms.fixture_curves()["cubic"].implicit, 1)])
        if name not in table:
            raise UsageError(f"unknown form {name!r}; choose from {sorted(table)}")
        return table[name], list(forms.fixture_curves().items())
    _need_n(n)
    return planar.canonical_form(n).combined, [(c.name, c) for c in planar.boundary_curves(n)]


def cmd_residue(cfg: RunConfig) -> int:
    form, curves = _named_form(cfg)
    wanted = cfg.options.get("curve")
    rows = []
    for key, curve in curves:
        if wanted and wanted not in (key, curve.name):
            continue
        if form.multiplicity(curve.normalized_implicit()) == 0:
            continue
        w = forms.residue(form, curve)
        orders = w.poles()
        rows.append({"curve": curve.name, "residue": _oneform_str(w),
                     "poles": [[rat_str(r), k] for r, k in orders.roots],
                     "order_at_infinity": orders.infinity})
    if wanted and not rows:
        raise UsageError(f"form has no pole along {wanted!r}")
    _emit(cfg, {"residues": rows})
    return EXIT_OK


def cmd_logcheck(cfg: RunConfig) -> int:
    form, curves = _named_form(cfg)
    report = forms.is_logarithmic(form, [c for _, c in curves
                                         if form.multiplicity(c.normalized_implicit())])
    _emit(cfg, report.to_json())
    return EXIT_OK if report.logarithmic else EXIT_FAIL


def cmd_dualvol(cfg: RunConfig) -> int:
    if cfg.options.get("disk"):
        report = dualvol.disk_convergence(cfg.options["disk"], parse_point(cfg.options.get("point") or "0,1/2"))
        _emit(cfg, {"values": [rat_str(v) for v in report.values],
                    "deltas": report.deltas, "monotone": report.monotone})
        return EXIT_OK
    if not cfg.options.get("vertices") or not cfg.options.get("point"):
        raise UsageError("dualvol needs --vertices and --point (or --disk LEVELS)")
    try:
        polygon = dualvol.Polygon(parse_vertices(cfg.options["vertices"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    point = parse_point(cfg.options["point"])
    result = dualvol.dual_volume(polygon, point)
    _emit(cfg, {"value": None if result.value is None else rat_str(result.value),
                "bounded": result.bounded,
                "float": None if result.value is None else float(result.value)})
    return EXIT_OK


def cmd_limit(cfg: RunConfig) -> int:
    N = cfg.options["N"]
    if N is None or N < 3:
        raise UsageError("--N must be at least 3")
    point = parse_point(cfg.options.get("point") or "7/18,1/6")
    try:
        report = dualvol.limiting_canonical(point, N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.fmt == "json":
        _emit(cfg, {
            "point": [rat_str(v) for v in report.point],
            "rows": [{"n": r.n, "value": rat_str(r.value),
                      "delta": None if r.delta is None else rat_str(r.delta),
                      "cross_check": r.cross_check} for r in report.rows],
            "monotone_magnitude": report.monotone_magnitude,
            "converged": report.converged,
        })
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "value_num", "value_den", "float_approx", "delta_float"])
        for r in report.rows:
            writer.writerow([r.n, r.value.numerator, r.value.denominator, repr(float(r.value)),
                             "" if r.delta is None else repr(float(r.delta))])
        _emit(cfg, buf.getvalue())
    return EXIT_OK if all(r.cross_check for r in report.rows) else EXIT_FAIL


def cmd_fixtures_verify(cfg: RunConfig) -> int:
    report = fixtures.verify_all(cfg.samples, cfg.seed, slow=cfg.options.get("slow", False))
    _emit(cfg, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def selftest_checks() -> fixtures.Report:
    """Fast end-to-end certificates, a few seconds in total."""
    report = fixtures.Report()
    for n in (3, 4, 5):
        lam = planar.scalar_multiple(planar.resultant_boundary(n), planar.boundary_poly(n))
        report.add(f"presenting determinant is a multiple of b_{n}", lam is not None, str(lam))
    x, y = forms.xy_gens()
    report.add("b_2 is minus a square", planar.boundary_poly(2) == -(2 * y - 3 * x + 1) ** 2)
    for k in range(3, 7):
        planar.cusp(k)
        report.add(f"cusp of b_{k} has one preimage", planar.preimages(k, planar.vertex(k)) == [Fraction(1, k)])
    for n in (3, 4):
        cf = planar.canonical_form(n)
        report.add(f"canonical form for n = {n} is logarithmic",
                   forms.is_logarithmic(cf.combined, planar.boundary_curves(n)).logarithmic)
    tri = dualvol.Polygon([(0, 0), (1, 0), (0, 1)])
    sq = dualvol.Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    report.add("triangle dual volume is 27",
               dualvol.dual_volume(tri, (Fraction(1, 3), Fraction(1, 3))).value == 27)
    report.add("square dual volume is 16",
               dualvol.dual_volume(sq, (Fraction(1, 2), Fraction(1, 2))).value == 16)
    report.checks.extend(fixtures.verify_quartic_boundaries(20, 0).checks)
    return report


def cmd_selftest(cfg: RunConfig) -> int:
    report = selftest_checks()
    _emit(cfg, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", default=None, choices=("json", "csv", "svg"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)

    parser = argparse.ArgumentParser(prog="vcell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, fmt="json"):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler, default_format=fmt)
        return p

    p = add("boundary", cmd_boundary, "multiplicity vectors, counts and boundary equations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count-new", action="store_true", help="print only the count of new hypersurfaces")
    p.add_argument("--equations", action="store_true", help="accepted for clarity; d = 3 always lists b_2..b_n")

    p = add("canonical", cmd_canonical, "canonical form, logarithmicity and residues")
    p.add_argument("--n", type=int, required=True)

    p = add("plot", cmd_plot, "SVG drawing of the planar cell", fmt="svg")
    p.add_argument("--n", type=int, required=True)

    p = add("membership", cmd_membership, "classify a point, or sampled images of the simplex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", help="A/B,C/D")

    for name, handler, text in (("residue", cmd_residue, "residues along each pole curve"),
                                ("logcheck", cmd_logcheck, "logarithmicity certificate")):
        p = add(name, handler, text)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--form", help="fixture name (A_I, A_II, A_III, S1, triangle, simplex2d, nonlog)")
        group.add_argument("--n", type=int, help="use the canonical form of the n-point cell")
        if name == "residue":
            p.add_argument("--curve", help="restrict to one curve by name")

    p = add("dualvol", cmd_dualvol, "exact dual volume of a polygon at a point")
    p.add_argument("--vertices", help="x,y;x,y;... in A/B form")
    p.add_argument("--point", help="A/B,C/D")
    p.add_argument("--disk", type=int, help="report the inscribed-disk sequence up to this level")

    p = add("limit", cmd_limit, "canonical values for n = 3..N at a point", fmt="csv")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--point", help="A/B,C/D inside the three-point cell")

    p = add("fixtures-verify", cmd_fixtures_verify, "check the embedded polynomials")
    p.add_argument("--slow", action="store_true", help="also run the symbolic composition check")

    add("selftest", cmd_selftest, "fast end-to-end certificates")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    handler = args.handler
    del args.default_format
    try:
        cfg = RunConfig.from_args(args)
        return handler(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"vcell {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
