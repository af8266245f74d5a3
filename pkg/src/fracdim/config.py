"""Shared tolerances and reproducible run configuration."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

# Absolute tolerance applied on the permissive side of every inequality
# (ball membership, part diameters, separation bounds).  Generators emit
# dyadic values, so this never flips a structurally determined comparison
# at desk scale; triadic Cantor coordinates are the documented exception.
DEFAULT_TOL = 1e-12

# Instance-size cutoff for the generic branch-and-bound exact solvers.
DEFAULT_EXACT_CUTOFF = 20

# Node-expansion budget for certificate search.
DEFAULT_BUDGET = 100_000

CONFIG_ENV_VAR = "FRACDIM_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    """Frozen knobs for one reproducible run.

    Precedence when resolving: explicit flags > config file > these defaults.
    There is no randomness anywhere; identical configs replay identically.
    """

    tol: float = DEFAULT_TOL
    exact_cutoff: int = DEFAULT_EXACT_CUTOFF
    budget: int = DEFAULT_BUDGET
    output: str | None = None

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.exact_cutoff < 4:
            raise ValueError("exact_cutoff must be at least 4")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        known = {k: data[k] for k in ("tol", "exact_cutoff", "budget", "output") if k in data}
        unknown = set(data) - {"tol", "exact_cutoff", "budget", "output"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**known)

    @classmethod
    def resolve(cls, config_path: str | None = None, **overrides) -> "RunConfig":
        """Defaults, then the config file (explicit path or $FRACDIM_CONFIG), then flags."""
        path = config_path or os.environ.get(CONFIG_ENV_VAR)
        cfg = cls.from_file(path) if path else cls()
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(cfg, **overrides) if overrides else cfg
