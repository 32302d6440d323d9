"""Closed-form Fourier analysis of the 5-point Helmholtz and shifted operators.

For a plane wave ``exp(i(w1 x + w2 y))`` on a grid of spacing H the angles are
``theta = (w1 H, w2 H)``. Functions here accept scalars or numpy arrays for
the frequencies and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

RatioVariant = Literal["HLM", "SL"]


class ResonanceError(ZeroDivisionError):
    """Raised when a coarse symbol or Gauss-Seidel denominator vanishes."""


@dataclass(frozen=True)
class Mode:
    omega1: float
    omega2: float

    @property
    def magnitude(self) -> float:
        return float(np.hypot(self.omega1, self.omega2))

    def theta(self, H: float) -> tuple[float, float]:
        return (self.omega1 * H, self.omega2 * H)

    def theta_max(self, H: float) -> float:
        return max(abs(self.omega1), abs(self.omega2)) * H

    def visible(self, H: float) -> bool:
        return self.theta_max(H) <= np.pi

    def oscillatory(self, H: float) -> bool:
        return np.pi / 2 <= self.theta_max(H) <= np.pi


@dataclass(frozen=True)
class BandConstants:
    """Edges of the near-kernel band ``(1-alpha0) k <= |w| <= (1+alpha1) k``
    and of the shifted-operator approximation band ``|w| >= (1+beta1) k``."""

    alpha0: float = 0.1
    alpha1: float = 0.4
    beta1: float = 0.8

    def __post_init__(self):
        if not (0 < self.alpha0 < 1 and 0 < self.alpha1 < 1):
            raise ValueError("alpha0 and alpha1 must lie in (0, 1)")
        if self.beta1 <= 0:
            raise ValueError("beta1 must be positive")

    def classify(self, abs_omega: float, k: float) -> str:
        """``"smooth"``, ``"near_kernel"`` or ``"oscillatory"`` relative to k."""
        if abs_omega < (1 - self.alpha0) * k:
            return "smooth"
        if abs_omega <= (1 + self.alpha1) * k:
            return "near_kernel"
        return "oscillatory"

    def shifted_accurate(self, abs_omega: float, k: float) -> bool:
        return abs_omega >= (1 + self.beta1) * k


def _omegas(mode) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(mode, Mode):
        return mode.omega1, mode.omega2
    w1, w2 = mode
    return np.asarray(w1, dtype=float), np.asarray(w2, dtype=float)


def _scalar(x):
    return complex(x) if np.ndim(x) == 0 else x


def symbol(k: float, H: float, beta: float, mode) -> complex | np.ndarray:
    """``(2 cos t1 + 2 cos t2 - 4) / H^2 + k^2 (1 + i beta)``."""
    if H <= 0:
        raise ValueError("H must be positive")
    w1, w2 = _omegas(mode)
    val = (2 * np.cos(w1 * H) + 2 * np.cos(w2 * H) - 4) / H**2 + k**2 * (1 + 1j * beta)
    return _scalar(val)


def symbol_ratio(
    k: float, h: float, H: float, mode, variant: RatioVariant = "HLM", beta: float = 0.5
) -> complex | np.ndarray:
    """Fine Helmholtz symbol over the coarse HLM or SL symbol."""
    if variant not in ("HLM", "SL"):
        raise ValueError(f"unknown variant {variant!r}")
    coarse = symbol(k, H, beta if variant == "SL" else 0.0, mode)
    scale = 8 / H**2 + k**2 * (1 + abs(beta))
    if np.any(np.abs(coarse) <= 1e-13 * scale):
        raise ResonanceError(f"coarse symbol vanishes for k={k}, H={H}")
    return _scalar(np.asarray(symbol(k, h, 0.0, mode)) / coarse)


def _gs_parts(kH: float, beta: float, t1, t2):
    num = np.abs(np.exp(-1j * t1) + np.exp(-1j * t2))
    den = np.abs(np.exp(1j * t1) + np.exp(1j * t2) - 4 + kH**2 * (1 + 1j * beta))
    return num, den


def gs_amplification_theta(kH: float, beta: float, t1, t2, resonance_tol: float = 1e-13):
    """Per-sweep lexicographic GS amplification in terms of scale angles."""
    num, den = _gs_parts(kH, beta, np.asarray(t1, float), np.asarray(t2, float))
    # relative to the size of the terms that cancel
    if np.any(den <= resonance_tol * (4 + kH**2)):
        raise ResonanceError(f"Gauss-Seidel denominator vanishes at kH={kH}")
    return num / den if np.ndim(num) else float(num / den)


def gs_amplification(k: float, H: float, beta: float, mode) -> float | np.ndarray:
    w1, w2 = _omegas(mode)
    return gs_amplification_theta(k * H, beta, w1 * H, w2 * H)


@dataclass
class FactorScan:
    value: float
    theta: tuple[float, float]
    excluded: list[tuple[float, float]] = field(default_factory=list)


def factor_scan(
    kH: float, beta: float, lo: float, points: int = 257, resonance_tol: float = 1e-12
) -> FactorScan:
    """Max of the GS amplification over ``lo <= max|theta| <= pi`` on a
    ``points x points`` lattice of ``[-pi, pi]^2``; resonant points are excluded
    and listed."""
    t = np.linspace(-np.pi, np.pi, points)
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    num, den = _gs_parts(kH, beta, T1, T2)
    window = np.maximum(np.abs(T1), np.abs(T2)) >= lo - 1e-14
    resonant = window & (den <= resonance_tol * max(1.0, kH**2))
    ok = window & ~resonant
    mu = np.where(ok, num / np.where(ok, den, 1.0), -np.inf)
    idx = np.unravel_index(np.argmax(mu), mu.shape)
    excluded = [(float(T1[i]), float(T2[i])) for i in zip(*np.nonzero(resonant))]
    return FactorScan(float(mu[idx]), (float(T1[idx]), float(T2[idx])), excluded)


def smoothing_factor(k: float, H: float, beta: float = 0.0, points: int = 257) -> float:
    """Worst GS amplification over oscillatory modes, ``pi/2 <= max|theta| <= pi``."""
    return factor_scan(k * H, beta, np.pi / 2, points).value


def overall_factor(k: float, H: float, beta: float = 0.0, points: int = 257) -> float:
    """Worst GS amplification over all visible modes; above 1 means divergence."""
    return factor_scan(k * H, beta, 0.0, points).value


def figure_sweep(
    k: float,
    h: float,
    depths,
    variant: RatioVariant = "HLM",
    beta: float = 0.5,
    samples: int = 65,
) -> list[dict]:
    """Symbol ratios and GS rates along the diagonal ``w1 = w2`` per scale.

    Scale ``H = 2**d h`` covers ``pi/2 <= w H <= pi``; the deepest requested
    scale covers ``0 <= w H <= pi``. Rows are ordered by depth then ``|w|/k``.
    """
    depths = sorted(depths)
    shift = beta if variant == "SL" else 0.0
    rows = []
    for d in depths:
        H = h * 2**d
        lo = 0.0 if d == depths[-1] else np.pi / 2
        w = np.linspace(lo, np.pi, samples) / H
        tau = np.asarray(symbol_ratio(k, h, H, (w, w), variant, beta))
        mu = np.asarray(gs_amplification(k, H, shift, (w, w)))
        for wi, ti, mi in zip(w, tau, mu):
            rows.append(
                {
                    "depth": d,
                    "H": H,
                    "kH": k * H,
                    "omega_over_k": float(np.sqrt(2) * wi / k),
                    "re_tau": float(ti.real),
                    "im_tau": float(ti.imag),
                    "mu": float(mi),
                }
            )
    return rows


def factor_table(kh_values, betas=(0.0, 0.5), points: int = 257) -> list[dict]:
    """Smoothing and overall factors for each ``kH`` and shift."""
    out = []
    for kH in kh_values:
        for b in betas:
            out.append(
                {
                    "kH": float(kH),
                    "beta": float(b),
                    "smoothing": factor_scan(kH, b, np.pi / 2, points).value,
                    "overall": factor_scan(kH, b, 0.0, points).value,
                }
            )
    return out
