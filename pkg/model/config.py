"""
Run configuration: YAML defaults merged with command-line overrides.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import yaml

from model.errors import IndexOutOfRange, OutOfRange
from model.graph import Graph

DEFAULTS_PATH = Path(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))) / "config" / "defaults.yaml"


def load_defaults(path: Optional[Union[str, Path]] = None) -> Dict:
    """Load the YAML defaults file (config/defaults.yaml unless a path is given)."""
    with open(path or DEFAULTS_PATH, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs once the graph source is resolved."""

    start: int = 0
    t_max: float = 10.0
    steps: int = 101
    time_scale: float = 1.0
    fmt: str = "json"
    out: Optional[str] = None
    tol: float = 1e-8
    breakdown_factor: float = 1e-10
    gqd_tol: float = 1e-8
    dense_cap: int = 4096
    seed: int = 7
    p: float = 0.2
    max_tries: int = 1000

    def __post_init__(self):
        if self.t_max <= 0:
            raise OutOfRange(f"t_max must be positive, got {self.t_max}")
        if self.steps < 1:
            raise OutOfRange(f"steps must be >= 1, got {self.steps}")
        if self.time_scale <= 0:
            raise OutOfRange(f"time_scale must be positive, got {self.time_scale}")
        if self.fmt not in ("json", "csv"):
            raise OutOfRange(f"format must be json or csv, got {self.fmt}")
        if self.tol <= 0:
            raise OutOfRange(f"tolerance must be positive, got {self.tol}")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)

    def breakdown_tol(self, g: Graph) -> float:
        """Lanczos stops once beta <= breakdown_factor * max(1, ||A||_1)."""
        return self.breakdown_factor * max(1.0, g.one_norm)

    def check_start(self, n: int) -> None:
        if self.start < 0 or self.start >= n:
            raise IndexOutOfRange(f"start vertex {self.start} not in [0, {n})")

    @classmethod
    def from_sources(cls, overrides: Dict, defaults: Optional[Dict] = None) -> "RunConfig":
        """Build from YAML defaults, letting non-None overrides win."""
        defaults = defaults if defaults is not None else load_defaults()
        time = defaults.get("time", {})
        tolerances = defaults.get("tolerances", {})
        random_graph = defaults.get("random_graph", {})
        values = {
            "t_max": time.get("t_max", 10.0),
            "steps": time.get("steps", 101),
            "time_scale": time.get("time_scale", 1.0),
            "fmt": defaults.get("output", {}).get("format", "json"),
            "tol": tolerances.get("verify", 1e-8),
            "breakdown_factor": tolerances.get("breakdown_factor", 1e-10),
            "gqd_tol": tolerances.get("gqd_support", 1e-8),
            "dense_cap": defaults.get("oracle", {}).get("dense_cap", 4096),
            "seed": random_graph.get("seed", 7),
            "p": random_graph.get("p", 0.2),
            "max_tries": random_graph.get("max_tries", 1000),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)
