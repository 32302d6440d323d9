"""Problem setup and a single preconditioned solve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from helmmg.config import RunConfig
from helmmg.field import ComplexField, GridGeom, WaveNumberField, constant_medium, make_grid, point_source, wedge_medium
from helmmg.krylov import SolveReport, bicgstab
from helmmg.mgcycle import Hierarchy, build_hierarchy, precondition
from helmmg.operators import assemble


@dataclass
class RunResult:
    config: RunConfig
    report: SolveReport
    solution: ComplexField
    hierarchy: Hierarchy

    def to_dict(self) -> dict:
        h = self.hierarchy
        return {
            "config": self.config.to_dict(),
            "report": self.report.to_dict(),
            "levels": [
                {
                    "depth": p.depth,
                    "n": p.geom.n,
                    "kh_max": p.kh_max,
                    "kh_min": p.kh_min,
                    "smoother": p.smoother_kind,
                    "target": p.smoother_target,
                    "sweeps": list(p.sweeps),
                    "coarsest": p.is_coarsest,
                    "coarse_solver": p.coarse_solver,
                }
                for p in h.plans
            ],
            "extra_sweeps_over_v11": h.extra_sweeps_per_cycle(),
        }


def make_problem(cfg: RunConfig) -> tuple[GridGeom, WaveNumberField, ComplexField]:
    geom = make_grid(cfg.n)
    if cfg.problem == "wedge":
        kfield = wedge_medium(geom, cfg.k, cfg.wedge)
    else:
        kfield = constant_medium(geom, cfg.k)
    return geom, kfield, point_source(geom, cfg.source_location, 1.0)


def run(cfg: RunConfig) -> RunResult:
    geom, kfield, f = make_problem(cfg)
    A = assemble(geom, kfield, 0.0)
    hier = build_hierarchy(geom, kfield, cfg.variant, cfg.beta, cfg.bands)
    x, rep = bicgstab(
        A, f, lambda r: precondition(hier, r), cfg.tol_factor, cfg.max_iter, work=hier.work
    )
    return RunResult(cfg, rep, x, hier)
