"""Configuration and report records for the verification harness."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from .grid import GridSpec

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "CheckRecord",
    "SweepTable",
    "SuiteReport",
    "load_config",
    "PRESETS",
]

SCHEMA_VERSION = 1

PRESETS = {
    # full exterior algebra, identity-level checks
    "identity": {"grid_points": 8, "grid_spacing": 0.125},
    # small space where Choi matrices are affordable
    "choi": {"grid_points": 4, "grid_spacing": 0.25},
}


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    preset: str = "identity"
    grid_points: int = 8
    grid_spacing: float = 0.125
    fock_modes: int | None = None
    time_horizon: float = 1.0
    h_levels: int = 4
    kraus_ns: tuple = (4, 8, 16, 32)
    picard_steps: int = 20
    seed: int = 2024
    tolerances: dict = field(default_factory=dict)
    out_dir: str = "reports"

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.fock_modes is None:
            self.fock_modes = self.grid_points
        if self.fock_modes != self.grid_points:
            raise ConfigError("modes are grid cells; counts must match")
        if not 4 <= self.grid_points <= 12:
            raise ConfigError("identity suites need 4 to 12 grid points")
        if self.grid_spacing <= 0:
            raise ConfigError("grid spacing must be positive")
        if self.time_horizon > self.x_max + 1e-12:
            raise ConfigError("time horizon exceeds the grid extent")
        if self.h_levels < 1:
            raise ConfigError("need at least one refinement level")
        self.kraus_ns = tuple(int(n) for n in self.kraus_ns)
        if not self.kraus_ns or any(n < 1 for n in self.kraus_ns):
            raise ConfigError("chunk counts must be positive")
        self.tolerances = {str(k): float(v) for k, v in self.tolerances.items()}

    @property
    def x_max(self) -> float:
        return self.grid_points * self.grid_spacing

    def grid_spec(self) -> GridSpec:
        return GridSpec(self.grid_points, self.grid_spacing)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kraus_ns"] = list(self.kraus_ns)
        return d


def _coerce(key: str, raw: str):
    ints = {"grid_points", "fock_modes", "h_levels", "picard_steps", "seed"}
    floats = {"grid_spacing", "time_horizon"}
    if key in ints:
        return int(raw)
    if key in floats:
        return float(raw)
    if key == "kraus_ns":
        return tuple(int(part) for part in raw.replace(",", " ").split())
    return raw


def load_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Read a flat ``key = value`` config file (``#`` comments allowed).

    ``tol_<check>`` keys override individual check tolerances.  ``preset``
    is applied first; explicit keys win over preset values.
    """
    data: dict = {}
    tols: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        for ln, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {ln}: expected 'key = value'")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key.startswith("tol_"):
                tols[key[4:]] = float(raw)
                continue
            try:
                data[key] = _coerce(key, raw)
            except ValueError as exc:
                raise ConfigError(f"line {ln}: bad value for {key}: {exc}") from exc
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    preset = data.get("preset", "identity")
    if preset not in PRESETS:
        raise ConfigError(f"unknown preset {preset!r}")
    merged = dict(PRESETS[preset])
    merged.update(data)
    merged["preset"] = preset
    merged.setdefault("tolerances", {})
    merged["tolerances"].update(tols)
    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        return ExperimentConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


@dataclass
class CheckRecord:
    name: str
    status: str  # pass | fail | finding
    value: float
    tol: float
    mode: str  # upper | lower
    anchor: str
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SweepTable:
    target: str
    label: str
    rows: list  # (parameter, error, ratio-or-None)
    threshold: float
    sentinel: bool
    status: str

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "label": self.label,
            "threshold": self.threshold,
            "sentinel": self.sentinel,
            "status": self.status,
            "rows": [
                {"parameter": p, "error": e, "ratio": r} for (p, e, r) in self.rows
            ],
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    config: dict
    checks: list
    sweeps: list
    timings: dict = field(default_factory=dict)  # not serialized: wall-clock noise

    @property
    def passed(self) -> bool:
        checks_ok = all(c.status != "fail" for c in self.checks)
        sweeps_ok = all(t.status != "fail" for t in self.sweeps)
        return checks_ok and sweeps_ok

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "sweeps": [t.to_dict() for t in self.sweeps],
            "passed": self.passed,
        }
