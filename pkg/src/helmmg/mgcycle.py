"""Level hierarchy and V-cycle for the HLM, SL and HYB variants.

Every level uses an operator in two roles: (A) relaxation and (B) residual
computation. HLM uses the Helmholtz operator for both, SL the shifted
operator for both, and HYB always computes residuals with the Helmholtz
operator but relaxes with the shifted one on intermediate scales.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse.linalg as spla

from helmmg.field import ComplexField, GridGeom, WaveNumberField
from helmmg.operators import DiscreteOperator, assemble, residual, to_sparse
from helmmg.smoothers import NormalOrientation, SmootherKind, Target, smooth
from helmmg.transfers import interpolate_bl, restrict_fw

FINEST_KH_LIMIT = 0.625
DENSE_COARSE_LIMIT = 33 * 33


class Variant(str, Enum):
    HLM = "HLM"
    SL = "SL"
    HYB = "HYB"


@dataclass(frozen=True)
class BandConfig:
    """kH thresholds used to classify levels.

    Bands are half-open ``(lo, hi]``. With ``classify_by="range"`` a level is
    in a band if any of its nodes is, and a level is coarsest once every
    node has ``kH >= coarsest_kh``; ``"max"`` looks at the largest kH only.
    On the constant-k ladder 0.625, 1.25, 2.5, 5 both give the same plan.
    """

    # plain GS diverges badly (overall factor > 3) for 1.25 <= kH <= 2.2
    normal_band: tuple[float, float] = (0.9, 2.2)
    # HYB relaxes with M from kH ~ 0.625 up to, not including, the coarsest level
    hybrid_band: tuple[float, float] = (0.6, 3.5)
    coarsest_kh: float = 3.5
    gs_sweeps: tuple[int, int] = (1, 1)
    normal_sweeps: tuple[int, int] = (4, 4)
    coarse_sweeps: int = 10
    normal_orientation: NormalOrientation = "column"
    classify_by: str = "range"  # "range": any node in band; "max": kH_max only


@dataclass(frozen=True)
class LevelPlan:
    depth: int
    geom: GridGeom
    kh_max: float
    kh_min: float
    smoother_target: Target
    smoother_kind: SmootherKind
    sweeps: tuple[int, int]
    is_coarsest: bool
    coarse_solver: str | None = None  # "gs" or "direct" on the coarsest level

    @property
    def H(self) -> float:
        return self.geom.h


@dataclass
class WorkReport:
    """Work in units of one finest-grid operator application."""

    wu: float = 0.0
    smoothing_wu: float = 0.0
    normal_sweep_wu: float = 0.0
    residual_wu: float = 0.0
    cycles: int = 0
    gs_sweeps: dict = field(default_factory=lambda: defaultdict(int))
    normal_sweeps: dict = field(default_factory=lambda: defaultdict(int))

    def add_sweeps(self, depth: int, kind: SmootherKind, count: int, weight: float) -> None:
        if kind == "gs":
            cost = count * weight
            self.gs_sweeps[depth] += count
        else:
            # two operator applications per normal-equation sweep
            cost = 2 * count * weight
            self.normal_sweeps[depth] += count
            self.normal_sweep_wu += cost
        self.smoothing_wu += cost
        self.wu += cost

    def add_residual(self, weight: float) -> None:
        self.residual_wu += weight
        self.wu += weight

    def extra_sweeps_over_v11(self, coarsest_depth: int) -> float:
        """Relaxation sweeps per cycle beyond the two of a V(1,1), summed over
        non-coarsest levels."""
        if not self.cycles:
            return 0.0
        extra = 0.0
        for depth in set(self.gs_sweeps) | set(self.normal_sweeps):
            if depth == coarsest_depth:
                continue
            per_cycle = (self.gs_sweeps[depth] + self.normal_sweeps[depth]) / self.cycles
            extra += per_cycle - 2
        return extra

    def to_dict(self) -> dict:
        return {
            "wu": self.wu,
            "smoothing_wu": self.smoothing_wu,
            "normal_sweep_wu": self.normal_sweep_wu,
            "residual_wu": self.residual_wu,
            "cycles": self.cycles,
            "gs_sweeps": {str(d): c for d, c in sorted(self.gs_sweeps.items())},
            "normal_sweeps": {str(d): c for d, c in sorted(self.normal_sweeps.items())},
        }


@dataclass
class Level:
    plan: LevelPlan
    relax_op: DiscreteOperator
    residual_op: DiscreteOperator
    weight: float
    _direct: object = None

    def direct_solve(self, f: ComplexField) -> ComplexField:
        if self._direct is None:
            A = to_sparse(self.residual_op)
            if A.shape[0] <= DENSE_COARSE_LIMIT:
                # pinv also covers the singular pure-Neumann case (k = 0)
                pinv = np.linalg.pinv(A.toarray())
                self._direct = lambda b: pinv @ b
            else:
                self._direct = spla.splu(A.tocsc()).solve
        x = self._direct(f.values.ravel())
        return ComplexField(f.geom, x.reshape(f.geom.shape))


@dataclass
class Hierarchy:
    variant: Variant
    beta: float
    bands: BandConfig
    levels: list[Level]
    work: WorkReport = field(default_factory=WorkReport)

    @property
    def plans(self) -> list[LevelPlan]:
        return [lv.plan for lv in self.levels]

    @property
    def finest(self) -> Level:
        return self.levels[0]

    @property
    def coarsest_depth(self) -> int:
        return len(self.levels) - 1

    def extra_sweeps_per_cycle(self) -> int:
        """Planned sweeps per V-cycle beyond a V(1,1), from the level plans."""
        return sum(sum(p.sweeps) - 2 for p in self.plans if not p.is_coarsest)


def _in_band(x: float, band: tuple[float, float]) -> bool:
    return band[0] < x <= band[1]


def _hits(kh: np.ndarray, band: tuple[float, float], how: str) -> bool:
    if how == "max":
        return _in_band(float(kh.max()), band)
    return bool(((kh > band[0]) & (kh <= band[1])).any())


def _targets(variant: Variant, kh: np.ndarray, bands: BandConfig) -> tuple[Target, Target]:
    """(relaxation target, residual target) for one level."""
    if variant is Variant.HLM:
        return "helmholtz", "helmholtz"
    if variant is Variant.SL:
        return "shifted", "shifted"
    relax = "shifted" if _hits(kh, bands.hybrid_band, bands.classify_by) else "helmholtz"
    return relax, "helmholtz"


def build_hierarchy(
    geom: GridGeom,
    kfield: WaveNumberField,
    variant: Variant | str,
    beta: float = 0.5,
    bands: BandConfig = BandConfig(),
) -> Hierarchy:
    variant = Variant(variant)
    if kfield.geom != geom:
        raise ValueError("wave-number field lives on a different grid")
    if geom.n % 4 or geom.n < 8:
        raise ValueError(f"grid n={geom.n} cannot be coarsened twice")
    if kfield.k_max * geom.h > FINEST_KH_LIMIT + 1e-12:
        warnings.warn(
            f"finest grid has k*h = {kfield.k_max * geom.h:.4g} > {FINEST_KH_LIMIT}",
            stacklevel=2,
        )

    levels: list[Level] = []
    g, kf, depth = geom, kfield, 0
    while True:
        kh_nodes = kf.k * g.h
        kh_max, kh_min = float(kh_nodes.max()), float(kh_nodes.min())
        kh_stop = kh_max if bands.classify_by == "max" else kh_min
        coarsest = kh_stop >= bands.coarsest_kh or g.n <= 4 or g.n % 2 == 1
        relax_t, resid_t = _targets(variant, kh_nodes, bands)

        if coarsest:
            # relaxation is a near-exact solver only if every node is past the threshold
            solver = "gs" if kh_min >= bands.coarsest_kh else "direct"
            if solver == "direct" and g.num_points > 257**2:
                raise ValueError(f"coarsest grid n={g.n} too large for a direct solve")
            kind, sweeps = "gs", (0, 0)
        elif _hits(kh_nodes, bands.normal_band, bands.classify_by):
            solver, kind, sweeps = None, "normal_gs", bands.normal_sweeps
        else:
            solver, kind, sweeps = None, "gs", bands.gs_sweeps
        plan = LevelPlan(depth, g, kh_max, kh_min, relax_t, kind, sweeps, coarsest, solver)

        ops = {t: assemble(g, kf, beta if t == "shifted" else 0.0) for t in {relax_t, resid_t}}
        levels.append(Level(plan, ops[relax_t], ops[resid_t], g.num_points / geom.num_points))
        if coarsest:
            break
        g, kf, depth = g.coarsen(), kf.inject(), depth + 1

    return Hierarchy(variant, float(beta), bands, levels)


def vcycle(hier: Hierarchy, level: int, u: ComplexField, f: ComplexField) -> ComplexField:
    """One V-cycle on ``level``; updates ``u`` in place and returns it."""
    lv = hier.levels[level]
    plan, work = lv.plan, hier.work
    orient = hier.bands.normal_orientation
    if level == 0:
        work.cycles += 1

    if plan.is_coarsest:
        if plan.coarse_solver == "direct":
            u.values += lv.direct_solve(residual(lv.residual_op, u, f)).values
            work.add_residual(lv.weight)
        else:
            smooth(lv.relax_op, u, f, "gs", hier.bands.coarse_sweeps)
            work.add_sweeps(plan.depth, "gs", hier.bands.coarse_sweeps, lv.weight)
        return u

    pre, post = plan.sweeps
    smooth(lv.relax_op, u, f, plan.smoother_kind, pre, orient)
    work.add_sweeps(plan.depth, plan.smoother_kind, pre, lv.weight)

    r = residual(lv.residual_op, u, f)
    work.add_residual(lv.weight)
    rc = restrict_fw(r)
    ec = vcycle(hier, level + 1, ComplexField.zeros(rc.geom), rc)
    u.values += interpolate_bl(ec, plan.geom).values

    smooth(lv.relax_op, u, f, plan.smoother_kind, post, orient)
    work.add_sweeps(plan.depth, plan.smoother_kind, post, lv.weight)
    return u


def precondition(hier: Hierarchy, r: ComplexField) -> ComplexField:
    """One V-cycle from a zero guess on the finest level's residual-role system."""
    return vcycle(hier, 0, ComplexField.zeros(r.geom), r)
