"""Command-line front end for the verification suites.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .harness import SUITE_NAMES, SWEEP_TARGETS, emit_report, run_suite, sweep_convergence
from .harness_types import ConfigError, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carshift",
        description="verification suites for measure perturbations of shift "
                    "semigroups on fermionic Fock space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a named verification suite")
    run.add_argument("--suite", required=True, choices=SUITE_NAMES)
    _common(run)

    sweep = sub.add_parser("sweep", help="run a convergence sweep")
    sweep.add_argument("--target", required=True, choices=SWEEP_TARGETS)
    sweep.add_argument("--levels", type=int, default=4,
                       help="refinement levels (at least 3)")
    _common(sweep)
    return parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="flat key = value config file")
    p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    p.add_argument("--out", default=None, help="report output directory")
    p.add_argument("--format", default="json", choices=("json", "csv", "text"))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, overrides={"seed": args.seed})
        out_dir = args.out if args.out is not None else config.out_dir
        if args.command == "run":
            report = run_suite(args.suite, config)
        else:
            report = sweep_convergence(args.target, args.levels, config)
        paths = emit_report(report, args.format, out_dir)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for c in report.checks:
        line = f"{c.status.upper():8s} {c.name}  value={c.value:.3e} tol={c.tol:.3e}"
        print(line)
    for t in report.sweeps:
        tag = "exact" if t.sentinel else f"threshold {t.threshold:.3g}"
        print(f"{t.status.upper():8s} sweep {t.target} [{t.label}] ({tag})")
        for p, e, r in t.rows:
            ratio = "" if r is None else f" ratio={r:.3f}"
            print(f"         param={p:.6g} error={e:.3e}{ratio}")
    for part, seconds in report.timings.items():
        print(f"timing: {part} {seconds:.2f}s", file=sys.stderr)
    for path in paths:
        print(f"wrote {path}", file=sys.stderr)
    print("overall:", "pass" if report.passed else "FAIL")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
