"""Five-point Helmholtz / shifted-Laplacian operators with Sommerfeld closure.

The operator is ``Lap u + k^2 (1 + i*beta) u``. On the boundary the centered
first-order condition ``du/dn - i k u = 0`` determines the ghost value
``u_ghost = u_mirror + 2 H i k u_boundary``, which is folded back into the
stencil: the mirrored neighbor weight doubles and the center gains ``2ik/H``
per boundary direction (twice at corners).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from helmmg.field import ComplexField, GridGeom, WaveNumberField

# stencil slots
C, N, S, E, W = range(5)
# (slot, di, dj) for each neighbor; N/S move in y, E/W in x
NEIGHBORS = ((N, 0, 1), (S, 0, -1), (E, 1, 0), (W, -1, 0))


@dataclass(frozen=True)
class DiscreteOperator:
    geom: GridGeom
    kfield: WaveNumberField
    shift: float
    stencil: np.ndarray  # (5, n+1, n+1) complex: center, N, S, E, W

    @property
    def diagonal(self) -> np.ndarray:
        return self.stencil[C]


def assemble(geom: GridGeom, kfield: WaveNumberField, shift: float = 0.0) -> DiscreteOperator:
    if kfield.geom != geom:
        raise ValueError("wave-number field lives on a different grid")
    if shift < 0:
        raise ValueError(f"shift must be nonnegative, got {shift}")
    n, H = geom.n, geom.h
    inv_h2 = 1.0 / H**2
    k = kfield.k

    st = np.zeros((5,) + geom.shape, dtype=np.complex128)
    st[C] = -4.0 * inv_h2 + k**2 * (1.0 + 1j * shift)
    for slot in (N, S, E, W):
        st[slot] = inv_h2

    robin = 2j * k / H
    # x = 0: ghost at ix=-1 mirrors ix=1
    st[W, 0, :] = 0.0
    st[E, 0, :] = 2.0 * inv_h2
    st[C, 0, :] += robin[0, :]
    st[E, n, :] = 0.0
    st[W, n, :] = 2.0 * inv_h2
    st[C, n, :] += robin[n, :]
    st[S, :, 0] = 0.0
    st[N, :, 0] = 2.0 * inv_h2
    st[C, :, 0] += robin[:, 0]
    st[N, :, n] = 0.0
    st[S, :, n] = 2.0 * inv_h2
    st[C, :, n] += robin[:, n]

    st.setflags(write=False)
    return DiscreteOperator(geom, kfield, float(shift), st)


def _check(A: DiscreteOperator, u: ComplexField) -> None:
    if u.geom != A.geom:
        raise ValueError(f"field on n={u.geom.n} does not match operator on n={A.geom.n}")


def apply_array(st: np.ndarray, u: np.ndarray) -> np.ndarray:
    v = st[C] * u
    v[:, :-1] += st[N, :, :-1] * u[:, 1:]
    v[:, 1:] += st[S, :, 1:] * u[:, :-1]
    v[:-1, :] += st[E, :-1, :] * u[1:, :]
    v[1:, :] += st[W, 1:, :] * u[:-1, :]
    return v


def apply(A: DiscreteOperator, u: ComplexField) -> ComplexField:
    _check(A, u)
    return ComplexField(A.geom, apply_array(A.stencil, u.values))


def residual(A: DiscreteOperator, u: ComplexField, f: ComplexField) -> ComplexField:
    _check(A, u)
    _check(A, f)
    return ComplexField(A.geom, f.values - apply_array(A.stencil, u.values))


def to_sparse(A: DiscreteOperator) -> sp.csr_matrix:
    """Assembled matrix in the ravelled (C-order) node numbering."""
    shape = A.geom.shape
    idx = np.arange(A.geom.num_points).reshape(shape)
    rows = [idx.ravel()]
    cols = [idx.ravel()]
    vals = [A.stencil[C].ravel()]
    for slot, di, dj in NEIGHBORS:
        ix = slice(max(0, -di), shape[0] - max(0, di))
        jx = slice(max(0, -dj), shape[1] - max(0, dj))
        nb = idx[max(0, di): shape[0] + min(0, di), max(0, dj): shape[1] + min(0, dj)]
        rows.append(idx[ix, jx].ravel())
        cols.append(nb.ravel())
        vals.append(A.stencil[slot][ix, jx].ravel())
    M = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(A.geom.num_points,) * 2,
    )
    M.sum_duplicates()
    M.eliminate_zeros()
    return M.tocsr()
