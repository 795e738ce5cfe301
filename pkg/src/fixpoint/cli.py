"""Command-line front end.

Exit codes: 0 on success, 1 when control conditions or a scheme/problem
pairing fail validation, 2 on runtime errors (missing or unparsable input,
divergence, oracle failure, I/O).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from fixpoint import schedules as sch
from fixpoint.engine import ConfigurationError, DivergenceError, ValidationError
from fixpoint.harness.experiment import compare_from_dict, compare_table_csv, run_experiment
from fixpoint.harness.plotting import emit_plot
from fixpoint.harness.problems import SCHEMES, SchemeMismatchError, config_from_dict
from fixpoint.operators import CATALOGUE
from fixpoint.space import SpaceSpec, modulus_of_convexity_estimate, modulus_of_smoothness_estimate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2


class CliError(Exception):
    def __init__(self, message, code=EXIT_RUNTIME):
        super().__init__(message)
        self.code = code


def _emit(obj, as_json, human=None):
    if as_json or human is None:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(human)


def _read_json(source):
    """Load JSON from a file path, or parse ``source`` itself as JSON text."""
    path = Path(source)
    if path.exists():
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CliError(f"{source}: invalid JSON: {exc}") from exc
    stripped = source.lstrip()
    if stripped.startswith("{"):
        try:
            return json.loads(source)
        except json.JSONDecodeError as exc:
            raise CliError(f"invalid inline JSON: {exc}") from exc
    raise CliError(f"no such file: {source}")


def _report_json(report):
    return {"all_hold": report.all_hold, "conditions": report.to_dict()}


def cmd_run(args):
    raw = _read_json(args.config)
    stop = dict(raw.get("stop", {}))
    if args.max_iters is not None:
        stop["max_iters"] = args.max_iters
    if args.tol is not None:
        has_target = raw.get("problem", {}).get("space", {}).get("kind", "euclidean") != "lp"
        stop["target_tol" if has_target and raw.get("scheme") != "dk" else "residual_tol"] = args.tol
    raw["stop"] = stop
    if args.force:
        print("WARNING: --force set; running despite failing control conditions", file=sys.stderr)
    try:
        config = config_from_dict(raw)
        trace, summary = run_experiment(config, out=args.out, force=args.force)
    except ValidationError as exc:
        _emit({"error": str(exc), **_report_json(exc.report)}, args.json,
              f"{exc}\n{exc.report.format_table()}")
        return EXIT_INVALID
    except SchemeMismatchError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    except DivergenceError as exc:
        raise CliError(str(exc)) from exc
    print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _validate_target(data, conditions):
    if "schedules" in data:
        data = data["schedules"]
    if "form" in data:
        s = sch.schedule_from_dict(data)
        if conditions == "halpern":
            return sch.validate_halpern(s)
        if conditions == "theorem":
            return sch.validate_theorem_conditions(s)
        raise CliError(f"--conditions {conditions} needs a schedule bundle, not a single schedule", EXIT_RUNTIME)
    get = lambda k: sch.schedule_from_dict(data[k]) if k in data else None  # noqa: E731
    try:
        if conditions == "halpern":
            phi = get("phi") or get("xi")
            return sch.validate_halpern(phi)
        if conditions == "theorem":
            weights = sch.weights_from_dict(data["weights"]) if "weights" in data else None
            return sch.validate_theorem_conditions(get("xi"), get("zeta"), weights)
        if conditions == "corollary":
            return sch.validate_corollary(get("xi"), get("zeta"), get("phi"))
        return sch.validate_dk(get("wp"), get("xi"), get("zeta"))
    except (AttributeError, TypeError, KeyError) as exc:
        raise CliError(f"schedule bundle is missing entries for --conditions {conditions}") from exc


def cmd_validate(args):
    data = _read_json(args.input)
    try:
        report = _validate_target(data, args.conditions)
    except ValueError as exc:
        raise CliError(f"invalid schedule: {exc}") from exc
    _emit(_report_json(report), args.json, report.format_table())
    return EXIT_OK if report.all_hold else EXIT_INVALID


def cmd_compare(args):
    raw = _read_json(args.config)
    if args.max_iters is not None:
        raw.setdefault("stop", {})["max_iters"] = args.max_iters
    try:
        rows = compare_from_dict(raw, out=args.out, force=args.force)
    except (ValidationError, ConfigurationError) as exc:
        if isinstance(exc, ValidationError):
            _emit({"error": str(exc), **_report_json(exc.report)}, args.json, f"{exc}\n{exc.report.format_table()}")
            return EXIT_INVALID
        if isinstance(exc, SchemeMismatchError) or "at least one scheme" in str(exc):
            raise CliError(str(exc), EXIT_INVALID) from exc
        raise CliError(str(exc)) from exc
    table = [
        {"scheme": r.scheme, **r.summary.to_dict()} for r in rows
    ]
    _emit({"rows": table}, args.json, compare_table_csv(rows).rstrip("\n"))
    return EXIT_OK


def cmd_plot(args):
    try:
        emit_plot(args.trace, args.out)
    except FileNotFoundError as exc:
        raise CliError(f"no such file: {args.trace}") from exc
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        print(json.dumps({"plot": str(args.out)}))
    return EXIT_OK


def cmd_list(args):
    catalogue = {
        "maps": CATALOGUE["maps"],
        "operators": CATALOGUE["operators"],
        "resolvent_scales": sorted(["const", "convergent"]),
        "schedules": sorted(["const", "power", "table"]),
        "schemes": sorted(SCHEMES),
        "weights": sorted(["geometric", "uniform"]),
    }
    human = "\n".join(f"{k}: {', '.join(v)}" for k, v in sorted(catalogue.items()))
    _emit(catalogue, args.json, human)
    return EXIT_OK


def _parse_space(text, dim):
    if text in ("euclid", "euclidean"):
        return SpaceSpec.euclidean(dim)
    if text.startswith("lp:"):
        try:
            p = float(text[3:])
        except ValueError as exc:
            raise CliError(f"invalid exponent in {text!r}", EXIT_INVALID) from exc
        try:
            return SpaceSpec.lp(p, dim)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INVALID) from exc
    raise CliError(f"unknown space {text!r}; use euclid or lp:P", EXIT_INVALID)


def cmd_probe(args):
    space = _parse_space(args.space, args.dim)
    samples = int(args.samples)
    try:
        delta = modulus_of_convexity_estimate(space, args.eps, samples, seed=args.seed)
        rho = modulus_of_smoothness_estimate(space, args.t, samples, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    print(json.dumps({
        "space": space.to_dict(),
        "samples": samples,
        "seed": args.seed,
        "eps": args.eps,
        "modulus_of_convexity": delta,
        "t": args.t,
        "modulus_of_smoothness": rho,
    }, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")

    parser = argparse.ArgumentParser(prog="fixpoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run one experiment config")
    p.add_argument("config")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--tol", type=float, help="target tolerance (residual tolerance without an oracle)")
    p.add_argument("--out", help="output directory for trace.csv, summary.json, convergence.svg")
    p.add_argument("--force", action="store_true", help="run even if control conditions fail")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("validate", parents=[common], help="check schedules against a condition set")
    p.add_argument("input", help="schedule JSON, schedule bundle or experiment config (path or inline)")
    p.add_argument("--conditions", choices=("halpern", "theorem", "corollary", "dk"), default="theorem")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compare", parents=[common], help="run several schemes on one problem")
    p.add_argument("config")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--out")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("plot", parents=[common], help="render a trace CSV as an SVG chart")
    p.add_argument("trace")
    p.add_argument("out")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("list", parents=[common], help="list the catalogue")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("probe", parents=[common], help="estimate the moduli of convexity and smoothness")
    p.add_argument("--space", default="euclid", help="euclid or lp:P")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--samples", type=float, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ConfigurationError, ValueError, KeyError, OSError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
