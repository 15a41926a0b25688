"""Suite runner, convergence sweeps, and report emission.

Reports are deterministic functions of (suite, seed, config): rerunning with
the same inputs reproduces the emitted files byte for byte.  Wall-clock
timings are collected on the side and printed to the console, never written
into report files.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
import time

from . import suites
from .harness_types import (
    CheckRecord,
    ConfigError,
    ExperimentConfig,
    SuiteReport,
    SweepTable,
)
from .sampling import suite_rng

__all__ = ["SUITE_NAMES", "SWEEP_TARGETS", "run_suite", "sweep_convergence",
           "emit_report"]

_SUITE_FNS = {
    "car_algebra": suites.suite_car_algebra,
    "theorem1": suites.suite_theorem1,
    "measure": suites.suite_measure,
    "picard": suites.suite_picard,
    "theorem2": suites.suite_theorem2,
    "no_event": suites.suite_no_event,
}

SUITE_NAMES = tuple(_SUITE_FNS) + ("all",)
SWEEP_TARGETS = ("theorem1_h", "theorem2_h", "kraus_n", "mera_t", "picard_n")


def run_suite(name: str, config: ExperimentConfig) -> SuiteReport:
    if name not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {name!r}")
    names = list(_SUITE_FNS) if name == "all" else [name]
    checks: list[CheckRecord] = []
    sweeps: list[SweepTable] = []
    timings: dict = {}
    for part in names:
        rng = suite_rng(config.seed, part)
        started = time.perf_counter()
        part_checks, part_sweeps = _SUITE_FNS[part](config, rng)
        timings[part] = time.perf_counter() - started
        prefix = "" if name != "all" else part + "."
        for c in part_checks:
            c.name = prefix + c.name
            checks.append(c)
        for group in part_sweeps:
            sweeps.extend(group)
    return SuiteReport(
        suite=name,
        seed=config.seed,
        config=config.to_dict(),
        checks=checks,
        sweeps=sweeps,
        timings=timings,
    )


def sweep_convergence(target: str, levels: int, config: ExperimentConfig) -> SuiteReport:
    if target not in SWEEP_TARGETS:
        raise ConfigError(f"unknown sweep target {target!r}")
    if levels < 3:
        raise ConfigError("convergence sweeps need at least 3 levels")
    started = time.perf_counter()
    if target == "theorem1_h":
        tables = suites._theorem1_sweep(config, levels=levels)
    elif target == "theorem2_h":
        tables = suites._theorem2_sweep(config, levels=levels)
    elif target == "kraus_n":
        ns = list(config.kraus_ns)
        while len(ns) < levels:
            ns.append(ns[-1] * 2)
        cfg = ExperimentConfig(**{**config.to_dict(), "kraus_ns": tuple(ns[:levels])})
        tables = suites._kraus_sweep(cfg)
    elif target == "mera_t":
        if levels > 3:
            raise ConfigError("small-time sweep supports at most 3 levels")
        tables = suites._small_time_sweep(config, levels=levels, start_level=1)
    else:  # picard_n
        import numpy as np

        from . import fock as fk
        from . import grid as gd

        spec = gd.GridSpec(4, config.x_max / 4)
        space = fk.FockSpace(4)
        pairs = suites._compliant_pairs_m4(spec)
        floor = suites._discretization_floor_m4(space, spec, pairs)
        errors = suites._flow_distance_by_step(space, spec, 4, levels, pairs)
        params = [float(n) for n in range(1, levels + 1)]
        tables = [suites.make_sweep_table(
            "picard_n", "iteration distance to the shift flow", params, errors,
            threshold=max(10 * floor, 1e-9), require="monotone_floor")]
    report = SuiteReport(
        suite=f"sweep_{target}",
        seed=config.seed,
        config=config.to_dict(),
        checks=[],
        sweeps=tables,
        timings={target: time.perf_counter() - started},
    )
    return report


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")


def _format_text(report: SuiteReport) -> str:
    out = io.StringIO()
    out.write(f"suite: {report.suite}\nseed: {report.seed}\n")
    for c in report.checks:
        cmp = "<=" if c.mode == "upper" else ">="
        out.write(
            f"[{c.status.upper():8s}] {c.name}: value={c.value!r} {cmp} tol={c.tol!r}"
            f"  [{c.anchor}]\n"
        )
        if c.note:
            out.write(f"           note: {c.note}\n")
    for t in report.sweeps:
        head = "exact (at rounding floor)" if t.sentinel else f"threshold {t.threshold!r}"
        out.write(f"[{t.status.upper():8s}] sweep {t.target} ({t.label}); {head}\n")
        for p, e, r in t.rows:
            ratio = "" if r is None else f"  ratio={r!r}"
            out.write(f"           parameter={p!r}  error={e!r}{ratio}\n")
    out.write(f"overall: {'pass' if report.passed else 'FAIL'}\n")
    return out.getvalue()


def emit_report(report: SuiteReport, fmt: str = "json", out_dir: str = ".") -> list[str]:
    """Write the report in the requested format; returns the written paths."""
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"unknown report format {fmt!r}")
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory: {exc}") from exc
    paths = []
    base = os.path.join(out_dir, report.suite)
    try:
        if fmt == "json":
            path = base + ".json"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
                fh.write("\n")
            paths.append(path)
        elif fmt == "csv":
            path = base + "_checks.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["suite", "check", "value", "tol", "status", "anchor"])
                for c in report.checks:
                    writer.writerow(
                        [report.suite, c.name, repr(c.value), repr(c.tol),
                         c.status, c.anchor])
            paths.append(path)
            for t in report.sweeps:
                path = f"{base}__{t.target}_{_slug(t.label)}.csv"
                with open(path, "w", encoding="utf-8", newline="") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(["parameter", "error", "ratio"])
                    for p, e, r in t.rows:
                        writer.writerow([repr(p), repr(e),
                                         "" if r is None else repr(r)])
                paths.append(path)
        else:
            path = base + ".txt"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(_format_text(report))
            paths.append(path)
    except OSError as exc:
        raise ConfigError(f"cannot write report: {exc}") from exc
    return paths
