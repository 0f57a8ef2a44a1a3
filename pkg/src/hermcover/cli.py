"""Command line front end: ``hermcover info|verify|count|group dump|arc profile``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

from . import __version__
from .curve import (CurveFamilyParams, build_cn, build_cn_prime, canonical_degree_check, closed_form_report,
                    count_places, degree_of_D, ds_identity_check, genus_closed_form, genus_plucker_oracle,
                    growth_inequalities, load_curve_spec, p_rank_closed_form, singular_locus)
from .gf import FieldTooLarge

SCHEMA_VERSION = 1

SUITES = ("singularities", "genus", "prank", "aut", "exactseq", "galois",
          "frobenius", "points", "arc", "weierstrass")
REQUIRES = {"exactseq": ("aut",), "galois": ("aut",)}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class VerificationSuiteConfig:
    spec: Path
    suites: tuple[str, ...] = SUITES
    precision: int | None = None
    max_field_order: int | None = None
    threads: int = 1
    out: Path | None = None
    fmt: str = "json"

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        closed = set(self.suites)
        for s in self.suites:
            closed.update(REQUIRES.get(s, ()))
        self.suites = tuple(s for s in SUITES if s in closed)


def resolve_spec(path: str) -> Path:
    """A file path, or the name of a shipped spec (e.g. ``normalized_q2_n1``)."""
    p = Path(path)
    if p.exists():
        return p
    shipped = resources.files("hermcover") / "data" / f"{path.removesuffix('.curve')}.curve"
    if shipped.is_file():
        return Path(str(shipped))
    raise UsageError(f"spec file not found: {path}")


def load_params(path: str, max_order: int | None) -> CurveFamilyParams:
    spec = resolve_spec(path)
    try:
        return load_curve_spec(spec, max_order)
    except FieldTooLarge as exc:
        raise UsageError(str(exc)) from None
    except (ValueError, KeyError) as exc:
        raise UsageError(f"malformed spec {spec}: {exc}") from None


# --- checks ------------------------------------------------------------------------

def _check(name, anchor, status, **data):
    return {"name": name, "paper_anchor": anchor, "status": status, "data": data}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


class Context:
    def __init__(self, params: CurveFamilyParams, cfg: VerificationSuiteConfig):
        self.params = params
        self.cfg = cfg

    @cached_property
    def curve(self):
        return build_cn(self.params)

    @cached_property
    def tu_curve(self):
        return build_cn_prime(self.params)

    @cached_property
    def locus(self):
        return singular_locus(self.curve)

    @cached_property
    def tu_locus(self):
        return singular_locus(self.tu_curve)

    @cached_property
    def group(self):
        from .autgrp import full_group
        return full_group(self.params)


def suite_singularities(ctx: Context):
    q, n = ctx.params.q, ctx.params.n
    out = []
    for model, locus in (("xy", ctx.locus), ("tu", ctx.tu_locus)):
        ok = (len(locus) == q + 1
              and all(s.multiplicity == q ** (2 * n) and len(s.tangent_lines) == q ** (2 * n)
                      and s.ordinary and s.rational_tangents for s in locus))
        out.append(_check(f"singular_locus_{model}", "singular points: q+1 ordinary points of multiplicity q^2n",
                          _status(ok), points=[list(s.point) for s in locus],
                          multiplicities=[s.multiplicity for s in locus]))
    return out


def suite_genus(ctx: Context):
    g = genus_closed_form(ctx.params)
    xy = genus_plucker_oracle(ctx.curve, ctx.locus)
    tu = genus_plucker_oracle(ctx.tu_curve, ctx.tu_locus)
    return [_check("genus", "genus closed form", _status(g == xy == tu), closed_form=g, plucker_xy=xy, plucker_tu=tu),
            _check("canonical_degree", "2g-2 from the adjoint canonical series",
                   _status(canonical_degree_check(ctx.params)), degree_of_D=degree_of_D(ctx.curve, ctx.locus))]


def suite_prank(ctx: Context):
    return [_check("p_rank", "p-rank closed form via Deuring-Shafarevich", _status(ds_identity_check(ctx.params)),
                   p_rank=p_rank_closed_form(ctx.params))]


def suite_aut(ctx: Context):
    from .autgrp import verify_group, orbit_stabilizer_checks
    v = verify_group(ctx.params, ctx.group, ctx.curve)
    o = orbit_stabilizer_checks(ctx.group, ctx.params)
    growth = growth_inequalities(ctx.params)
    return [_check("aut_order", "automorphism group order", _status(v.holds), order=v.order,
                   expected=v.expected_order, all_preserve=v.all_preserve,
                   presentations_agree=v.presentations_agree, family_sizes=v.family_sizes,
                   list_sizes=v.list_sizes),
            _check("orbit_stabilizer", "transitivity on singular points and stabilizer order", _status(o.holds),
                   orbit=o.orbit_size, stabilizer=o.stabilizer_order, expected_stabilizer=o.expected_stabilizer_order),
            _check("growth", "size of Aut against genus and p-rank",
                   _status(growth["aut_exceeds_genus"] and growth["aut_power_bound"]
                           and growth.get("sylow_within_bound", True)), **growth)]


def suite_exactseq(ctx: Context):
    from .autgrp import restriction_and_exact_sequence
    r = restriction_and_exact_sequence(ctx.group, ctx.params)
    return [_check("exact_sequence", "kernel and image of the restriction to Z=0", _status(r.holds),
                   kernel=r.kernel_order, image=r.image_order, failures=r.failures)]


def suite_galois(ctx: Context):
    from .autgrp import generate_group
    from .galois import enumerate_outer_galois, verify_projection_substitution
    scan = enumerate_outer_galois(ctx.group, ctx.curve)
    gens = {g.entries: g for r in scan.points for g in r.stabilizer}
    H = generate_group([gens[k] for k in sorted(gens)], field=ctx.group.field)
    gen = H.key_set() == ctx.group.key_set()
    F, q = ctx.params.field, ctx.params.q
    quad = sorted(ctx.params.tower.quad_to_big.image_set())
    subst = all(verify_projection_substitution(ctx.params, b) for b in quad if F.add(F.pow(b, q + 1), 1))
    return [_check("outer_galois_points", "exactly q^2-q outer Galois points on Z=0", _status(scan.holds),
                   count=len(scan.points), expected=scan.expected_count,
                   points=[list(r.point) for r in scan.points]),
            _check("galois_generation", "Aut generated by the Galois groups", _status(gen),
                   generated_order=H.order, group_order=ctx.group.order),
            _check("projection_normal_form", "projection from (b:1:0) has the standard normal form",
                   _status(subst))]


def suite_frobenius(ctx: Context):
    from .frobenius import classify_family_member, is_frobenius_nonclassical, nonclassical_window
    P = ctx.params
    k = 2 * (P.n + 1) * P.e
    cls = classify_family_member(P)
    direct = is_frobenius_nonclassical(ctx.curve, k)
    out = [_check("frobenius_consistency", "classifier witness iff nonclassical at q^(2(n+1))",
                  _status(cls.has_witness == direct.nonclassical),
                  verdict="nonclassical" if direct.nonclassical else "classical",
                  remainder_terms=direct.remainder_terms)]
    if cls.has_witness:
        win = nonclassical_window(ctx.curve)
        hits = sorted(s for s, r in win.items() if r.nonclassical)
        out.append(_check("frobenius_window", "nonclassical exactly at p^s = q^(2(n+1))",
                          _status(hits == [k]), nonclassical_s=hits, window=max(win)))
    else:
        out.append(_check("frobenius_window", "nonclassical exactly at p^s = q^(2(n+1))", "skip",
                          reason="no normalizing witness"))
    return out


def suite_points(ctx: Context):
    pc = count_places(ctx.curve, locus=ctx.locus)
    status = "skip" if pc.matches_closed_form is None or not ctx.params.is_normalized() else _status(pc.matches_closed_form)
    return [_check("point_counts", "rational places and plane points", status, places=pc.places,
                   plane_points=pc.plane_points, expected_places=pc.closed_form_places,
                   expected_plane_points=pc.closed_form_plane_points)]


def suite_arc(ctx: Context):
    from .arcs import ProjPlane, completeness_check, intersection_profile, rational_point_set
    P = ctx.params
    plane = ProjPlane(P.field)
    S = rational_point_set(ctx.curve)
    prof = intersection_profile(plane, S)
    rep = completeness_check(plane, S, profile=prof, params=P)
    cf = closed_form_report(P)
    ok = (not rep.complete and bool(rep.explicit_ok)
          and set(rep.explicit_witnesses) <= set(rep.extension_witnesses))
    if P.is_normalized():
        ok = ok and rep.k == cf.arc_k and rep.d == cf.arc_d
        status = _status(ok)
    else:
        status = "skip"
    return [_check("arc", "(k, d)-arc parameters and incompleteness", status, **rep.to_dict(),
                   histogram={str(k): v for k, v in sorted(prof.histogram.items())})]


def suite_weierstrass(ctx: Context):
    from .localgeom import sample_smooth_points, verify_gap_at_affine, verify_total_ramification
    pts = sample_smooth_points(ctx.curve, 10, seed=0)
    certs = [verify_gap_at_affine(ctx.curve, Q, ctx.cfg.precision) for Q in pts]
    ram = verify_total_ramification(ctx.params, ctx.tu_curve.c_prime)
    gap_status = _status(all(c.valid for c in certs)) if certs else "skip"  # no rational affine points
    return [_check("weierstrass_gap", "ord of the explicit function at smooth points is q^(2n+1)-1", gap_status,
                   orders=[c.order for c in certs], expected=certs[0].expected if certs else None),
            _check("total_ramification", "lines L(u)=0 meet the tu-model only at (1:0:0)",
                   _status(ram.holds), roots=len(ram.roots))]


SUITE_FUNCS = {name: globals()[f"suite_{name}"] for name in SUITES}


def run_verify(params: CurveFamilyParams, cfg: VerificationSuiteConfig) -> dict:
    ctx = Context(params, cfg)
    checks = []
    for name in cfg.suites:
        try:
            for c in SUITE_FUNCS[name](ctx):
                c["suite"] = name
                checks.append(c)
        except Exception as exc:  # report, do not crash on a math mismatch
            checks.append({"suite": name, "name": name, "paper_anchor": "", "status": "error",
                           "data": {"error": f"{type(exc).__name__}: {exc}"}})
    failed = [c for c in checks if c["status"] in ("fail", "error")]
    return {"schema_version": SCHEMA_VERSION, "version": __version__, "command": "verify",
            "curve": _curve_header(params), "suites": list(cfg.suites),
            "checks": checks, "status": "fail" if failed else "pass"}


def _curve_header(params: CurveFamilyParams) -> dict:
    F = params.field
    return {"p": params.p, "e": params.e, "q": params.q, "n": params.n,
            "alphas": [F.digits(a) for a in params.alphas], "c": F.digits(params.c),
            "normalized": params.is_normalized()}


# --- output --------------------------------------------------------------------------

def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _as_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def _as_text(report: dict) -> str:
    lines = []
    if "checks" in report:
        for c in report["checks"]:
            lines.append(f"{c['status'].upper():5} {c['suite']}/{c['name']}: {c['paper_anchor']}")
        lines.append(f"overall: {report['status']}")
    else:
        lines += [f"{k}: {v}" for k, v in _flatten(report)]
    return "\n".join(lines) + "\n"


def _as_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "checks" in report:
        w.writerow(["suite", "name", "status", "paper_anchor"])
        for c in report["checks"]:
            w.writerow([c["suite"], c["name"], c["status"], c["paper_anchor"]])
    else:
        w.writerow(["key", "value"])
        for k, v in _flatten(report):
            w.writerow([k, json.dumps(v) if isinstance(v, list) else v])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    return {"json": _as_json, "text": _as_text, "csv": _as_csv}[fmt](report)


# --- verbs -------------------------------------------------------------------------------

def cmd_info(args) -> int:
    params = load_params(args.spec, args.max_field_order)
    rep = closed_form_report(params).to_dict()
    report = {"schema_version": SCHEMA_VERSION, "version": __version__, "command": "info",
              "curve": _curve_header(params), "invariants": rep}
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip()) if args.suite else SUITES
    cfg = VerificationSuiteConfig(Path(args.spec), suites, args.precision, args.max_field_order,
                                  args.threads, args.out, args.format)
    params = load_params(args.spec, args.max_field_order)
    report = run_verify(params, cfg)
    _emit(render(report, args.format), args.out)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_count(args) -> int:
    params = load_params(args.spec, args.max_field_order)
    C = build_cn(params)
    pc = count_places(C)
    data = {"places": pc.places, "affine_points": pc.affine_points, "points_at_infinity": pc.points_at_infinity,
            "branches_at_infinity": pc.branches_at_infinity, "plane_points": pc.plane_points}
    if params.is_normalized():
        data.update(expected_places=pc.closed_form_places, expected_plane_points=pc.closed_form_plane_points)
    report = {"schema_version": SCHEMA_VERSION, "version": __version__, "command": "count",
              "curve": _curve_header(params), "counts": data}
    _emit(render(report, args.format), args.out)
    ok = pc.matches_closed_form if params.is_normalized() else True
    return EXIT_OK if ok else EXIT_FAIL


def cmd_group_dump(args) -> int:
    from .autgrp import full_group
    params = load_params(args.spec, args.max_field_order)
    G = full_group(params)
    _emit(G.dump(), args.out)
    return EXIT_OK


def cmd_arc_profile(args) -> int:
    from .arcs import ProjPlane, completeness_check, intersection_profile, profile_csv, rational_point_set
    params = load_params(args.spec, args.max_field_order)
    plane = ProjPlane(params.field)
    S = rational_point_set(build_cn(params))
    prof = intersection_profile(plane, S)
    if args.format == "csv":
        _emit(profile_csv(prof), args.out)
        return EXIT_OK
    rep = completeness_check(plane, S, profile=prof, params=params)
    report = {"schema_version": SCHEMA_VERSION, "version": __version__, "command": "arc profile",
              "curve": _curve_header(params), "arc": rep.to_dict(),
              "histogram": {str(k): v for k, v in sorted(prof.histogram.items())}}
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=True, help="curve spec file or shipped spec name")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--threads", type=_positive, default=1, help="accepted for compatibility; kernels are vectorised")
    common.add_argument("--precision", type=_positive, help="series precision for local expansions")
    common.add_argument("--max-field-order", type=_positive, help="refuse working fields larger than this")

    parser = argparse.ArgumentParser(prog="hermcover", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("info", parents=[common], help="closed-form invariants").set_defaults(func=cmd_info)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", help="comma-separated list from: " + ",".join(SUITES))
    v.set_defaults(func=cmd_verify)
    sub.add_parser("count", parents=[common], help="brute-force point and place counts").set_defaults(func=cmd_count)
    g = sub.add_parser("group", help="automorphism group output")
    gs = g.add_subparsers(dest="action", required=True)
    gs.add_parser("dump", parents=[common], help="one element per line, nine codes").set_defaults(func=cmd_group_dump)
    a = sub.add_parser("arc", help="arc computations")
    asub = a.add_subparsers(dest="action", required=True)
    asub.add_parser("profile", parents=[common], help="line intersection histogram").set_defaults(func=cmd_arc_profile)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hermcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hermcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit():  # console-script entry point
    sys.exit(main())
