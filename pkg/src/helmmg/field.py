"""Node-centered grids on the unit square and the fields living on them.

Arrays are indexed ``values[ix, iy]`` with ``x = ix * h`` and ``y = iy * h``;
both indices run over ``0..n`` so boundary nodes are stored explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class GridGeom:
    """Uniform grid with ``n`` cells per side on [0, 1]^2."""

    n: int

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def h_exact(self) -> Fraction:
        return Fraction(1, self.n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n + 1, self.n + 1)

    @property
    def num_points(self) -> int:
        return (self.n + 1) ** 2

    @property
    def coarsenable(self) -> bool:
        return self.n % 2 == 0 and self.n >= 4

    def coarsen(self) -> GridGeom:
        if self.n % 2:
            raise ValueError(f"cannot coarsen grid with odd n={self.n}")
        return GridGeom(self.n // 2)

    def refine(self) -> GridGeom:
        return GridGeom(2 * self.n)

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates as two ``(n+1, n+1)`` arrays (ij indexing)."""
        t = np.arange(self.n + 1) / self.n
        return np.meshgrid(t, t, indexing="ij")


def make_grid(n: int) -> GridGeom:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if n < 4:
        raise ValueError(f"need at least 4 cells per side, got n={n}")
    if n % 2:
        raise ValueError(f"n must be even, got n={n}")
    return GridGeom(int(n))


@dataclass
class ComplexField:
    geom: GridGeom
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != self.geom.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid {self.geom.shape}"
            )

    @classmethod
    def zeros(cls, geom: GridGeom) -> ComplexField:
        return cls(geom, np.zeros(geom.shape, dtype=np.complex128))

    def copy(self) -> ComplexField:
        return ComplexField(self.geom, self.values.copy())

    def norm(self) -> float:
        """Discrete L2 norm: root-sum-square of nodal values."""
        return float(np.linalg.norm(self.values.ravel()))

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())


@dataclass
class WaveNumberField:
    geom: GridGeom
    k: np.ndarray

    def __post_init__(self):
        self.k = np.asarray(self.k, dtype=np.float64)
        if self.k.shape != self.geom.shape:
            raise ValueError(f"k shape {self.k.shape} does not match grid {self.geom.shape}")
        if (self.k < 0).any() or not np.isfinite(self.k).all():
            raise ValueError("wave number must be finite and nonnegative")

    @property
    def k_max(self) -> float:
        return float(self.k.max())

    def inject(self) -> WaveNumberField:
        """Coarse-grid wave numbers taken at coincident nodes."""
        return WaveNumberField(self.geom.coarsen(), self.k[::2, ::2].copy())


def constant_medium(geom: GridGeom, k: float) -> WaveNumberField:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return WaveNumberField(geom, np.full(geom.shape, float(k)))


def point_source(geom: GridGeom, location: tuple[float, float], amplitude: complex = 1.0) -> ComplexField:
    """Field equal to ``amplitude`` at the node nearest ``location``, zero elsewhere.

    The nodal value is not scaled by 1/h^2.
    """
    x, y = location
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"source location {location} outside the unit square")
    ix = int(round(x * geom.n))
    iy = int(round(y * geom.n))
    f = ComplexField.zeros(geom)
    f.values[ix, iy] = amplitude
    return f


@dataclass(frozen=True)
class WedgeGeometry:
    """Three-layer wedge medium: ``k = k_ref * c(x, y)``.

    The middle band lies between the line from ``(0, upper[0])`` to
    ``(1, upper[1])`` and the line from ``(0, lower[0])`` to ``(1, lower[1])``.
    """

    upper: tuple[float, float] = (0.8, 0.45)
    lower: tuple[float, float] = (0.6, 0.3)
    multipliers: tuple[float, float, float] = (1.0, 1.5, 2.0)  # top, band, bottom

    def contrast(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        y_up = self.upper[0] + (self.upper[1] - self.upper[0]) * x
        y_lo = self.lower[0] + (self.lower[1] - self.lower[0]) * x
        c_top, c_mid, c_bot = self.multipliers
        return np.where(y >= y_up, c_top, np.where(y >= y_lo, c_mid, c_bot))


def wedge_medium(geom: GridGeom, k_ref: float, wedge: WedgeGeometry = WedgeGeometry()) -> WaveNumberField:
    if k_ref <= 0:
        raise ValueError(f"k_ref must be positive, got {k_ref}")
    x, y = geom.coords()
    return WaveNumberField(geom, k_ref * wedge.contrast(x, y))
