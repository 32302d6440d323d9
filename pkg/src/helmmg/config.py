"""Run configuration, YAML persistence and the table presets."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from helmmg.field import WedgeGeometry
from helmmg.mgcycle import BandConfig, Variant

PROBLEMS = ("constant_k", "wedge")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    problem: str = "constant_k"
    k: float = 40.0  # k for constant_k, k_ref for wedge
    n: int = 64
    variant: str = "HYB"
    beta: float = 0.5
    tol_factor: float = 1e-7
    max_iter: int = 500
    source: tuple[float, float] | None = None  # None: problem default
    bands: BandConfig = field(default_factory=BandConfig)
    wedge: WedgeGeometry = field(default_factory=WedgeGeometry)
    output: str | None = None
    dump_solution: bool = False

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ConfigError(f"problem must be one of {PROBLEMS}, got {self.problem!r}")
        try:
            Variant(self.variant)
        except ValueError:
            raise ConfigError(f"unknown variant {self.variant!r}") from None
        if not self.k > 0:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.n < 8 or self.n % 4:
            raise ConfigError(f"n must be a multiple of 4 and at least 8, got {self.n}")
        if self.beta < 0:
            raise ConfigError(f"beta must be nonnegative, got {self.beta}")
        if not 0 < self.tol_factor <= 1:
            raise ConfigError(f"tol_factor must lie in (0, 1], got {self.tol_factor}")
        if self.max_iter < 1:
            raise ConfigError("max_iter must be positive")
        if self.source is not None and not all(0 <= c <= 1 for c in self.source):
            raise ConfigError(f"source {self.source} outside the unit square")

    @property
    def source_location(self) -> tuple[float, float]:
        if self.source is not None:
            return self.source
        return (0.5, 1.0) if self.problem == "wedge" else (0.5, 0.5)

    def replace(self, **changes) -> RunConfig:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        return _lists(d)

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        d = dict(d)
        unknown = set(d) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            if "bands" in d:
                d["bands"] = BandConfig(**_tuples(d["bands"]))
            if "wedge" in d:
                d["wedge"] = WedgeGeometry(**_tuples(d["wedge"]))
            if d.get("source") is not None:
                d["source"] = tuple(float(c) for c in d["source"])
            for key, typ in (("k", float), ("beta", float), ("tol_factor", float), ("n", int), ("max_iter", int)):
                if key in d:
                    d[key] = typ(d[key])
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        return cls(**d)


def _lists(obj):
    if isinstance(obj, dict):
        return {k: _lists(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_lists(v) for v in obj]
    return obj


def _tuples(d: dict) -> dict:
    return {k: tuple(v) if isinstance(v, list) else v for k, v in d.items()}


def dump_config(cfg: RunConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=True)


def parse_config(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a mapping")
    return RunConfig.from_dict(data)


def load_config(path: str | Path) -> RunConfig:
    return parse_config(Path(path).read_text())


# Iteration counts reported for the reference experiments. OSL is an external
# baseline (algebraic F(1,1) cycle) that is not implemented here.
REFERENCE_TABLES = {
    1: {
        "rows": [(40, 64), (50, 80), (80, 128), (100, 160), (150, 240)],
        "SL": [19, 24, 27.5, 31, 38],
        "HYB": [16, 20.5, 23, 26.5, 31.5],
        "OSL": [26, 31, 44, 52, 73],
    },
    2: {
        "rows": [(40, 64), (40, 128), (40, 256), (40, 512)],
        "SL": [19, 18, 17.5, 16],
        "HYB": [16, 15.5, 15, 14],
    },
    6: {
        "rows": [(15, 64), (30, 128), (60, 256), (120, 512), (240, 1024)],
        "SL": [13, 18.5, 33, 49.5, 61],
        "HYB": [9.5, 14, 23, 36.5, 41],
        "long": [False, False, False, True, True],
    },
}


def preset_configs(table: int, long: bool = False, base: RunConfig | None = None) -> list[RunConfig]:
    """Configs for every (row, variant) of a reference table."""
    if table not in REFERENCE_TABLES:
        raise ConfigError(f"no preset for table {table}")
    entry = REFERENCE_TABLES[table]
    base = base or RunConfig()
    problem = "wedge" if table == 6 else "constant_k"
    flags = entry.get("long", [False] * len(entry["rows"]))
    out = []
    for (k, n), is_long in zip(entry["rows"], flags):
        if is_long and not long:
            continue
        for variant in ("SL", "HYB"):
            out.append(base.replace(problem=problem, k=float(k), n=n, variant=variant))
    return out
