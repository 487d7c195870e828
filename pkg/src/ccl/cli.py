"""Command-line front end: cone inspection, boundary value problems, family
sampling, singular decompositions, oscillation reports, Kelvin scans, and the
full verification suite.

Exit codes: 0 success / all checks pass, 1 infeasible problem or failed
verification, 2 malformed input or I/O trouble.  The environment variable
CCL_SEED overrides any --seed flag.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis, families, kelvin
from .cones import classify_point, cone_from_spec, cone_profile, lemma21_report, mu_minus, mu_plus
from .conformal import branch_classify, radial_eigs
from .errors import DomainError, ExtrapolationError, InvariantViolation, TheoremViolation
from .report import jsonable
from .verify import SuiteConfig, config_from_dict, run_verification

_FIELDS = {
    "const": lambda n: kelvin.constant_field(),
    "fundamental": kelvin.fundamental_field,
    "fundamental_plus_constant": kelvin.fundamental_plus_constant,
}


def _effective_seed(args) -> int:
    env = os.environ.get("CCL_SEED")
    if env is not None:
        return int(env)
    return getattr(args, "seed", 0)


def _load_json_arg(text: str) -> dict:
    path = Path(text)
    if path.exists():
        return json.loads(path.read_text())
    return json.loads(text)


def _print_json(payload) -> None:
    print(json.dumps(jsonable(payload), indent=2, sort_keys=True))


def _fmt(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.12g}" if isinstance(x, float) else str(x)


def _profile_csv_rows(fam, cone, radii) -> list[list[str]]:
    prof = cone_profile(cone) if cone is not None else None
    rows = []
    for r in radii:
        jet = families.eval_family(fam, float(r))
        eigs = radial_eigs(jet)
        if prof is not None:
            branch = branch_classify(prof, eigs).value
        elif isinstance(fam, families.SigmaKNull):
            branch = "sigma_k_null"
        else:
            branch = branch_classify(_implied_profile(fam), eigs).value
        rows.append(
            [f"{v:.17g}" for v in (r, jet.u, jet.uprime, jet.udoubleprime, eigs.V, eigs.v)]
            + [branch]
        )
    return rows


def _implied_profile(fam):
    """Minimal profile carried by the family's own stored exponent."""
    from .cones import ConeProfile

    n = fam.n
    if isinstance(fam, families.PowerLaw):
        return ConeProfile(n=n, mu_plus=1.0, mu_minus=math.inf, axis_on_boundary=True)
    if isinstance(fam, families.PlusFamily):
        return ConeProfile(n=n, mu_plus=fam.mu_plus, mu_minus=math.inf, axis_on_boundary=True)
    return ConeProfile(n=n, mu_plus=1.0, mu_minus=fam.mu_minus, axis_on_boundary=False)


def _write_or_print(out_dir, name: str, text: str) -> None:
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
        print(f"wrote {path / name}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# --- subcommands ----------------------------------------------------------------


def cmd_cone_info(args) -> int:
    cone = cone_from_spec(_load_json_arg(args.spec))
    prof = cone_profile(cone)
    rows = lemma21_report(cone)
    if args.json:
        _print_json({
            "cone": _load_json_arg(args.spec),
            "mu_plus": prof.mu_plus,
            "mu_minus": prof.mu_minus,
            "axis_on_boundary": prof.axis_on_boundary,
            "checks": [r.to_dict() for r in rows],
        })
    else:
        print(f"n                = {cone.n}")
        print(f"mu_plus          = {_fmt(prof.mu_plus)}")
        print(f"mu_minus         = {_fmt(prof.mu_minus)}")
        print(f"axis_on_boundary = {prof.axis_on_boundary}")
        for r in rows:
            status = "pass" if r.passed else "FAIL"
            print(f"  [{status}] {r.name}: lhs={_fmt(r.lhs)} rhs={_fmt(r.rhs)}")
    return 0 if all(r.passed for r in rows) else 1


def cmd_mu(args) -> int:
    cone = cone_from_spec(_load_json_arg(args.spec))
    mp, mm = mu_plus(cone), mu_minus(cone)
    if args.json:
        _print_json({"mu_plus": mp, "mu_minus": mm})
    else:
        print(f"mu_plus  = {_fmt(mp)}")
        print(f"mu_minus = {_fmt(mm)}")
    return 0


def cmd_bvp(args) -> int:
    cone = cone_from_spec(_load_json_arg(args.spec))
    ann = families.Annulus(args.a, args.b)
    result = families.solve_radial_bvp(cone, ann, args.alpha, args.beta)
    if isinstance(result, families.Infeasible):
        print(result.message, file=sys.stderr)
        if args.json:
            _print_json({"infeasible": {"side": result.side, "lhs": result.lhs,
                                        "rhs": result.rhs}})
        return 1
    _print_json(families.family_to_spec(result))
    radii = families.log_midpoints(args.a, args.b, args.grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["r", "u", "uprime", "udoubleprime", "V", "v", "branch"])
    writer.writerows(_profile_csv_rows(result, cone, radii))
    if args.out:
        _write_or_print(args.out, "bvp_profile.csv", buf.getvalue())
    return 0


def cmd_family_eval(args) -> int:
    fam = families.family_from_spec(_load_json_arg(args.spec))
    cone = cone_from_spec(_load_json_arg(args.cone)) if args.cone else None
    lo, hi = fam.domain()
    lo = max(lo, args.rmin) if args.rmin else max(lo * 1.0001, 1e-8)
    hi = min(hi, args.rmax) if args.rmax else min(hi * 0.9999, 1e8)
    if not lo < hi:
        raise ValueError(f"empty evaluation interval ({lo}, {hi})")
    radii = families.log_midpoints(lo, hi, args.grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["r", "u", "uprime", "udoubleprime", "V", "v", "branch"])
    writer.writerows(_profile_csv_rows(fam, cone, radii))
    _write_or_print(args.out, "family_profile.csv", buf.getvalue())
    return 0


def _profile_from_args(args, n_hint=None) -> analysis.RadialProfile:
    if args.profile:
        if args.n is None:
            raise ValueError("--n is required with --profile")
        return analysis.read_profile_csv(args.profile, args.n)
    fam = families.family_from_spec(_load_json_arg(args.family))
    lo, hi = fam.domain()
    lo = max(lo * 1.0001, args.rmin)
    hi = min(hi * 0.9999, args.rmax)
    return analysis.profile_from_family(fam, lo, hi, m=args.grid)


def cmd_bocher(args) -> int:
    cone = cone_from_spec(_load_json_arg(args.spec))
    prof = cone_profile(cone)
    p = _profile_from_args(args)
    dec = analysis.bocher_decompose(prof, p)
    payload = {
        "case": dec.case.value,
        "a": dec.a,
        "alpha": dec.alpha,
        "remainder_is_zero": dec.w_is_zero,
    }
    if dec.ring_w is not None:
        payload["ring_w_median"] = float(np.median(dec.ring_w))
        payload["ring_w_spread"] = float(np.max(dec.ring_w) - np.min(dec.ring_w))
    _print_json(payload)
    return 0


def cmd_harnack(args) -> int:
    p = _profile_from_args(args)
    rep = analysis.harnack_report(p, args.epsilon)
    _print_json({
        "sup_over_inf": rep.sup_over_inf,
        "max_scaled_log_gradient": rep.max_scaled_log_gradient,
        "epsilon": args.epsilon,
    })
    return 0


def cmd_kelvin_scan(args) -> int:
    if args.field not in _FIELDS:
        raise ValueError(f"unknown field {args.field!r}; choose from {sorted(_FIELDS)}")
    field = _FIELDS[args.field](args.n)
    rep = kelvin.kelvin_scan(field, args.n, samples=args.samples, seed=_effective_seed(args))
    _print_json({
        "field": args.field,
        "n": args.n,
        "samples": len(rep.rows),
        "worst_margin": rep.worst_margin,
        "violations": rep.violations,
    })
    if args.out:
        _write_or_print(args.out, "kelvin_scan.csv", rep.to_csv())
    return 0 if rep.violations == 0 else 1


def cmd_verify(args) -> int:
    if args.config:
        cfg = config_from_dict(_load_json_arg(args.config))
    else:
        cfg = SuiteConfig()
    if args.seed is not None or os.environ.get("CCL_SEED"):
        cfg.seed = _effective_seed(args)
    if args.grid is not None:
        cfg.grid = args.grid
    if args.samples is not None:
        cfg.samples = args.samples
    if args.tol is not None:
        cfg.branch_tol = args.tol
    if args.out:
        cfg.out = args.out
    cfg.validate()
    report = run_verification(cfg)
    text = json.dumps(jsonable(report), indent=2, sort_keys=True)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify_report.json").write_text(text)
        print(f"wrote {out / 'verify_report.json'}")
    summary = {name: sum(not c["pass"] for c in rows) for name, rows in report["suites"].items()}
    if args.json or not cfg.out:
        print(text)
    print(
        f"checks={report['counts']['checks']} failed={report['counts']['failed']} "
        f"passed={report['passed']}",
        file=sys.stderr,
    )
    for name, failed in summary.items():
        if failed:
            print(f"  suite {name}: {failed} failing", file=sys.stderr)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccl",
        description="Cone geometry and radial analysis for a degenerate "
        "conformally invariant equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cone = sub.add_parser("cone", help="cone inspection")
    cone_sub = cone.add_subparsers(dest="cone_command", required=True)
    info = cone_sub.add_parser("info", help="critical exponents and exponent inequalities")
    info.add_argument("spec", help="cone spec as JSON text or a path to a JSON file")
    info.add_argument("--json", action="store_true")
    info.set_defaults(func=cmd_cone_info)

    mu = sub.add_parser("mu", help="critical exponents only")
    mu.add_argument("spec")
    mu.add_argument("--json", action="store_true")
    mu.set_defaults(func=cmd_mu)

    bvp = sub.add_parser("bvp", help="two-point radial boundary value problem")
    bvp.add_argument("spec")
    bvp.add_argument("a", type=float)
    bvp.add_argument("b", type=float)
    bvp.add_argument("alpha", type=float)
    bvp.add_argument("beta", type=float)
    bvp.add_argument("--grid", type=int, default=200)
    bvp.add_argument("--json", action="store_true")
    bvp.add_argument("--out", default=None)
    bvp.set_defaults(func=cmd_bvp)

    family = sub.add_parser("family", help="closed-form family sampling")
    family_sub = family.add_subparsers(dest="family_command", required=True)
    feval = family_sub.add_parser("eval", help="sample a family to CSV")
    feval.add_argument("spec")
    feval.add_argument("--cone", default=None)
    feval.add_argument("--rmin", type=float, default=None)
    feval.add_argument("--rmax", type=float, default=None)
    feval.add_argument("--grid", type=int, default=200)
    feval.add_argument("--out", default=None)
    feval.set_defaults(func=cmd_family_eval)

    def add_profile_args(p):
        p.add_argument("--family", default=None, help="family spec (JSON or path)")
        p.add_argument("--profile", default=None, help="CSV file with columns r,u")
        p.add_argument("--n", type=int, default=None, help="dimension for --profile input")
        p.add_argument("--rmin", type=float, default=1e-6)
        p.add_argument("--rmax", type=float, default=1.0)
        p.add_argument("--grid", type=int, default=200)

    bocher = sub.add_parser("bocher", help="singular decomposition of a radial profile")
    bocher.add_argument("spec", help="cone spec")
    add_profile_args(bocher)
    bocher.set_defaults(func=cmd_bocher)

    harnack = sub.add_parser("harnack", help="oscillation report for a radial profile")
    add_profile_args(harnack)
    harnack.add_argument("--epsilon", type=float, default=0.125)
    harnack.set_defaults(func=cmd_harnack)

    kel = sub.add_parser("kelvin", help="sphere-inversion scans")
    kel_sub = kel.add_subparsers(dest="kelvin_command", required=True)
    scan = kel_sub.add_parser("scan", help="sample the domination hypothesis")
    scan.add_argument("--field", default="fundamental", help=f"one of {sorted(_FIELDS)}")
    scan.add_argument("--n", type=int, default=4)
    scan.add_argument("--samples", type=int, default=1000)
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--out", default=None)
    scan.set_defaults(func=cmd_kelvin_scan)

    ver = sub.add_parser("verify", help="run every verification suite")
    ver.add_argument("--config", default=None, help="suite config (JSON or path)")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--grid", type=int, default=None)
    ver.add_argument("--samples", type=int, default=None)
    ver.add_argument("--tol", type=float, default=None)
    ver.add_argument("--out", default=None)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, DomainError, InvariantViolation, TheoremViolation,
            ExtrapolationError, json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cli_entry() -> None:
    sys.exit(main())
