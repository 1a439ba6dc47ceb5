"""Command-line front end.

Subcommands:
  verify  -- run a randomized verification campaign, write NDJSON findings
  qp      -- the constrained quadratic diagnostics (pk / chen / system16)
  chart   -- finite-difference checks of the warped dualistic structure
  audit   -- realizability audit of a serialized point-data file

Exit codes: 0 on success, 1 when a mathematical violation was found,
2 on usage/config errors.  A flat KEY=VALUE config file can be passed
with --config or through the STATCURV_CONFIG environment variable; all
keys are overridable by flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .ambient import WarpingProfile
from .campaign import WHICH_CHOICES, CampaignConfig, ConfigError, run_verify
from .chartlab import ChartPoint, StepOutOfRangeError, chart_curvature_check, duality_residual
from .optkit import (
    ConstrainedQP,
    chen_product_form_matrix,
    pk_form_matrix,
    solve_constrained_qp,
    system16_solutions,
)
from .reportio import canonical_dumps, write_ndjson
from .scengen import CLASSES, Scenario, realizability_audit

ENV_CONFIG = "STATCURV_CONFIG"

_CONFIG_TYPES = {
    "base_seed": int,
    "trials": int,
    "m_min": int,
    "m_max": int,
    "p_min": int,
    "p_max": int,
    "magnitude": float,
    "tol": float,
    "jobs": int,
    "which": str,
    "out": str,
}
_LIST_KEYS = {"profiles": str, "cbars": float, "classes": str}


def load_config_file(path: str) -> dict:
    """Parse a flat KEY=VALUE config file ('#' starts a comment)."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("%s:%d: expected KEY=VALUE" % (path, lineno))
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key in _LIST_KEYS:
                cast = _LIST_KEYS[key]
                values[key] = tuple(cast(tok) for tok in val.split(",") if tok)
            elif key in _CONFIG_TYPES:
                values[key] = _CONFIG_TYPES[key](val)
            else:
                raise ConfigError("%s:%d: unknown key %r" % (path, lineno, key))
    return values


def _parse_range(text: str, name: str):
    """'2:5' -> (2, 5); '3' -> (3, 3)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ConfigError("--%s expects N or MIN:MAX, got %r" % (name, text)) from None
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="statcurv", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--config", help="KEY=VALUE config file (default: $%s)" % ENV_CONFIG)
    v.add_argument("--seed", type=int, help="base seed")
    v.add_argument("--trials", type=int)
    v.add_argument("--m", help="tangent dimension N or MIN:MAX")
    v.add_argument("--p", help="normal dimension N or MIN:MAX")
    v.add_argument("--profile", help="comma-separated profile kinds")
    v.add_argument("--cbar", help="comma-separated cbar values")
    v.add_argument("--class", dest="klass", help="comma-separated classes (%s)" % ", ".join(CLASSES))
    v.add_argument("--magnitude", type=float)
    v.add_argument("--which", choices=WHICH_CHOICES)
    v.add_argument("--tol", type=float)
    v.add_argument("--out", help="findings NDJSON path")
    v.add_argument("--jobs", type=int)

    q = sub.add_parser("qp", help="constrained quadratic diagnostics")
    q.add_argument("--which", choices=("pk", "chen", "system16"), required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--alpha", type=float, default=1.0)

    c = sub.add_parser("chart", help="finite-difference chart checks")
    c.add_argument("--profile", default="exp", choices=("exp", "cosh", "linear", "const"))
    c.add_argument("--z-min", type=float, default=-1.0)
    c.add_argument("--z-max", type=float, default=1.0)
    c.add_argument("--samples", type=int, default=10)
    c.add_argument("--step", type=float, default=1e-5)
    c.add_argument("--n", type=int, default=1, help="fiber complex dimension")

    a = sub.add_parser("audit", help="realizability audit of a point-data JSON file")
    a.add_argument("datafile")
    return ap


def _cmd_verify(args) -> int:
    values: dict = {}
    config_path = args.config or os.environ.get(ENV_CONFIG)
    if config_path:
        values.update(load_config_file(config_path))
    if args.seed is not None:
        values["base_seed"] = args.seed
    if args.trials is not None:
        values["trials"] = args.trials
    if args.m is not None:
        values["m_min"], values["m_max"] = _parse_range(args.m, "m")
    if args.p is not None:
        values["p_min"], values["p_max"] = _parse_range(args.p, "p")
    if args.profile is not None:
        values["profiles"] = tuple(tok for tok in args.profile.split(",") if tok)
    if args.cbar is not None:
        values["cbars"] = tuple(float(tok) for tok in args.cbar.split(",") if tok)
    if args.klass is not None:
        values["classes"] = tuple(tok for tok in args.klass.split(",") if tok)
    for key in ("magnitude", "which", "tol", "out", "jobs"):
        val = getattr(args, key)
        if val is not None:
            values[key] = val
    cfg = CampaignConfig(**values)
    cfg.validate()
    summary, findings, code = run_verify(cfg)
    if cfg.out:
        write_ndjson(cfg.out, findings)
    print(canonical_dumps(summary.to_dict()))
    return code


def _cmd_qp(args) -> int:
    m, alpha = args.m, args.alpha
    if m < 2:
        print("error: need m >= 2", file=sys.stderr)
        return 2
    if args.which == "system16":
        rep = system16_solutions(m, alpha)
        print(canonical_dumps({
            "m": rep.m,
            "alpha": rep.alpha,
            "claimed": rep.claimed.tolist(),
            "claimed_sum": rep.claimed_sum,
            "claimed_feasible": rep.claimed_feasible,
            "kkt": rep.kkt.tolist(),
            "kkt_feasible": rep.kkt_feasible,
            "kkt_value": rep.kkt_value,
            "discrepancy": rep.discrepancy,
        }))
        return 0
    if args.which == "pk":
        problem = ConstrainedQP(pk_form_matrix(m), alpha)
        res = solve_constrained_qp(problem, "min")
        mode = "min"
    else:
        problem = ConstrainedQP(chen_product_form_matrix(m), alpha)
        res = solve_constrained_qp(problem, "max")
        mode = "max"
    print(canonical_dumps({
        "which": args.which,
        "mode": mode,
        "m": m,
        "alpha": alpha,
        "optimizer": res.optimizer.tolist(),
        "multiplier": res.multiplier,
        "value": res.value,
        "restricted_hessian_eigs": res.restricted_hessian_eigs.tolist(),
    }))
    return 0


def _cmd_chart(args) -> int:
    try:
        zs = np.linspace(args.z_min, args.z_max, args.samples)
        worst_dual = 0.0
        worst_curv = 0.0
        for z in zs:
            profile = WarpingProfile.of_kind(args.profile, float(z))
            point = ChartPoint(z=float(z), x=np.zeros(2 * args.n))
            worst_dual = max(worst_dual, duality_residual(profile, None, point, args.step))
            worst_curv = max(worst_curv, chart_curvature_check(profile, point, args.step))
    except (StepOutOfRangeError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    print(canonical_dumps({
        "profile": args.profile,
        "samples": args.samples,
        "step": args.step,
        "max_duality_residual": worst_dual,
        "max_curvature_deviation": worst_curv,
    }))
    return 0


def _cmd_audit(args) -> int:
    try:
        with open(args.datafile, "r", encoding="utf-8") as fh:
            rec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    scenario = None
    if "scenario" in rec:
        try:
            scenario = Scenario.from_dict(rec["scenario"])
        except (TypeError, ValueError):
            scenario = None
    report = realizability_audit(rec, scenario)
    print(canonical_dumps(report))
    return 0 if report["all_pass"] else 1


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "qp":
            return _cmd_qp(args)
        if args.command == "chart":
            return _cmd_chart(args)
        return _cmd_audit(args)
    except (ConfigError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
