import numpy as np
import pytest

from helmmg.field import ComplexField, constant_medium, make_grid
from helmmg.operators import apply, assemble


def dense_matrix(A):
    """Matrix of a field-to-field map built column by column from unit vectors."""
    geom = A.geom if hasattr(A, "geom") else None
    return dense_of(lambda u: apply(A, u), geom)


def dense_of(fn, geom):
    N = geom.num_points
    M = np.empty((N, N), dtype=complex)
    for c in range(N):
        e = np.zeros(N, dtype=complex)
        e[c] = 1.0
        M[:, c] = fn(ComplexField(geom, e.reshape(geom.shape))).values.ravel()
    return M


def random_field(geom, rng):
    return ComplexField(geom, rng.standard_normal(geom.shape) + 1j * rng.standard_normal(geom.shape))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_problem():
    g = make_grid(8)
    kf = constant_medium(g, 4.0)
    return g, kf, assemble(g, kf, 0.0)
