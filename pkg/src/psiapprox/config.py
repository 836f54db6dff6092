"""Experiment configuration: a versioned JSON document.

Example::

    {
      "schema": 1,
      "psi": {"family": "poisson", "alpha": 1.0, "r": 1.0, "delta": 0.0},
      "omega": {"family": "power", "K": 1.0, "gamma": 1.0},
      "beta": 0.0,
      "n_list": [4, 8, 16, 32],
      "space": "C",
      "grid": {"N": 4096, "M": 2048},
      "tolerances": {"remez": 1e-6, "eps_tail": 1e-12, "certificate": 1e-7},
      "output": {"csv": "verify.csv", "svg": "verify.svg"}
    }

psi families: "poisson" (delta, alpha, r), "exponential" (base) and
"table" (t, values; log-linear interpolation). omega families: "power"
(K, gamma), "zero" and "piecewise" (knots, values).
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .modulus import PiecewiseLinearModulus, PowerModulus, zero_modulus
from .psi_functions import ParametricPsi, PsiFunction, exponential_psi

SCHEMA_VERSION = 1
SPACES = ("C", "L1", "both")
DEFAULT_TOLERANCES = {"remez": 1e-6, "eps_tail": 1e-12, "certificate": 1e-7}
DEFAULT_GRID = {"N": 4096, "M": 2048}


class ConfigError(ValueError):
    """The configuration does not follow the schema."""


class TablePsi(PsiFunction):
    """psi given by samples, interpolated linearly in log psi.

    Beyond the last sample the final log-slope is continued.
    """

    def __init__(self, t, values):
        t = np.asarray(t, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.size < 2 or t.size != v.size:
            raise ConfigError("psi table needs matching t and values with at least 2 entries")
        if np.any(np.diff(t) <= 0) or np.any(v <= 0) or np.any(np.diff(v) >= 0):
            raise ConfigError("psi table must have increasing t and positive decreasing values")
        self.t = t
        self.logv = np.log(v)
        self.slope = (self.logv[-1] - self.logv[-2]) / (t[-1] - t[-2])
        super().__init__(name="table")

    def __call__(self, t):
        return np.exp(self.log(t))

    def log(self, t):
        t = np.asarray(t, dtype=float)
        out = np.interp(t, self.t, self.logv)
        out = np.where(t > self.t[-1], self.logv[-1] + self.slope * (t - self.t[-1]), out)
        return out if out.ndim else float(out)


@dataclass
class ExperimentConfig:
    psi: dict
    omega: dict
    beta: float = 0.0
    n_list: list = field(default_factory=lambda: [4, 8, 16, 32])
    space: str = "C"
    grid: dict = field(default_factory=lambda: dict(DEFAULT_GRID))
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output: dict = field(default_factory=dict)

    def make_psi(self):
        return build_psi(self.psi)

    def make_omega(self):
        return build_omega(self.omega)


def build_psi(spec):
    family = spec.get("family")
    try:
        if family == "poisson":
            return ParametricPsi(float(spec.get("delta", 0.0)), float(spec["alpha"]), float(spec["r"]))
        if family == "exponential":
            return exponential_psi(float(spec.get("base", 2.0)))
        if family == "table":
            return TablePsi(spec["t"], spec["values"])
    except KeyError as exc:
        raise ConfigError(f"psi spec misses {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad psi spec: {exc}") from None
    raise ConfigError(f"unknown psi family {family!r}")


def build_omega(spec):
    family = spec.get("family")
    try:
        if family == "power":
            return PowerModulus(float(spec.get("K", 1.0)), float(spec.get("gamma", 1.0)))
        if family == "zero":
            return zero_modulus()
        if family == "piecewise":
            return PiecewiseLinearModulus(spec["knots"], spec["values"])
    except KeyError as exc:
        raise ConfigError(f"omega spec misses {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad omega spec: {exc}") from None
    raise ConfigError(f"unknown omega family {family!r}")


def default_config():
    return ExperimentConfig(psi={"family": "poisson", "alpha": 1.0, "r": 1.0, "delta": 0.0},
                            omega={"family": "power", "K": 1.0, "gamma": 1.0})


def from_dict(data):
    """Validate a parsed document and build an ExperimentConfig."""
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"schema must be {SCHEMA_VERSION}")
    known = {"schema", "psi", "omega", "beta", "n_list", "space", "grid", "tolerances", "output"}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown keys: {sorted(extra)}")
    base = default_config()
    psi = data.get("psi", base.psi)
    omega = data.get("omega", base.omega)
    if not isinstance(psi, dict) or not isinstance(omega, dict):
        raise ConfigError("psi and omega must be objects")
    n_list = data.get("n_list", base.n_list)
    if not isinstance(n_list, list) or not n_list:
        raise ConfigError("n_list must be a non-empty list")
    if not all(isinstance(n, int) and not isinstance(n, bool) and n >= 2 for n in n_list):
        raise ConfigError("n_list entries must be integers >= 2")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("n_list must be strictly increasing")
    space = data.get("space", "C")
    if space not in SPACES:
        raise ConfigError(f"space must be one of {SPACES}")
    try:
        beta = float(data.get("beta", 0.0))
    except (TypeError, ValueError):
        raise ConfigError("beta must be a number") from None
    grid = dict(DEFAULT_GRID, **data.get("grid", {}))
    if not all(isinstance(v, int) and v > 0 for v in grid.values()):
        raise ConfigError("grid sizes must be positive integers")
    tolerances = dict(DEFAULT_TOLERANCES, **data.get("tolerances", {}))
    check_tolerances(tolerances)
    output = dict(data.get("output", {}))
    if set(output) - {"csv", "svg"} or not all(isinstance(v, str) and v for v in output.values()):
        raise ConfigError("output takes file names under the keys csv and svg")
    cfg = ExperimentConfig(psi, omega, beta, list(n_list), space, grid, tolerances, output)
    cfg.make_psi()
    cfg.make_omega()
    return cfg


def check_tolerances(tolerances):
    unknown = set(tolerances) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown tolerances: {sorted(unknown)}")
    for key, value in tolerances.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
            raise ConfigError(f"tolerance {key} must be a positive number")


def load(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return from_dict(data)


def apply_overrides(cfg, overrides):
    """Apply KEY=VAL pairs to the tolerances (or grid sizes N and M)."""
    for item in overrides or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"override {item!r} is not KEY=VAL")
        key = key.strip()
        try:
            if key in cfg.grid:
                cfg.grid[key] = int(value)
                if cfg.grid[key] <= 0:
                    raise ValueError
            else:
                cfg.tolerances[key] = float(value)
        except ValueError:
            raise ConfigError(f"override {item!r} has a bad value") from None
    check_tolerances(cfg.tolerances)
    return cfg
