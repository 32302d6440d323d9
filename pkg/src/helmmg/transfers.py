"""Full-weighting restriction and bilinear interpolation (node-centered, factor 2)."""

from __future__ import annotations

import numpy as np

from helmmg.field import ComplexField, GridGeom

_FW = np.array([[1.0, 2.0, 1.0], [2.0, 4.0, 2.0], [1.0, 2.0, 1.0]])


def _fw_sum(padded: np.ndarray) -> np.ndarray:
    # padded has one extra layer on every side; output at even fine nodes
    out = 0
    for a in range(3):
        for b in range(3):
            out = out + _FW[a, b] * padded[a::2, b::2][: (padded.shape[0] - 1) // 2, : (padded.shape[1] - 1) // 2]
    return out


def restrict_fw(fine: ComplexField) -> ComplexField:
    """Full weighting; weights of stencil points outside the domain are dropped
    and the remaining ones renormalised, so constants are reproduced."""
    geom = fine.geom
    if geom.n % 2:
        raise ValueError(f"cannot restrict from odd n={geom.n}")
    coarse = geom.coarsen()
    padded = np.pad(fine.values, 1)
    mask = np.pad(np.ones(geom.shape), 1)
    vals = _fw_sum(padded) / _fw_sum(mask)
    return ComplexField(coarse, vals)


def interpolate_bl(coarse: ComplexField, fine_geom: GridGeom | None = None) -> ComplexField:
    fine_geom = fine_geom or coarse.geom.refine()
    if fine_geom.n != 2 * coarse.geom.n:
        raise ValueError(f"n={fine_geom.n} is not a refinement of n={coarse.geom.n}")
    c = coarse.values
    f = np.empty(fine_geom.shape, dtype=np.complex128)
    f[::2, ::2] = c
    f[1::2, ::2] = 0.5 * (c[:-1, :] + c[1:, :])
    f[::2, 1::2] = 0.5 * (c[:, :-1] + c[:, 1:])
    f[1::2, 1::2] = 0.25 * (c[:-1, :-1] + c[1:, :-1] + c[:-1, 1:] + c[1:, 1:])
    return ComplexField(fine_geom, f)
