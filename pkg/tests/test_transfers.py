import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helmmg.field import ComplexField, make_grid
from helmmg.transfers import interpolate_bl, restrict_fw

from conftest import random_field


@pytest.mark.parametrize("n", [4, 8, 30])
def test_constants_reproduced(n):
    g = make_grid(n)
    c = 2.5 - 1.0j
    assert np.allclose(restrict_fw(ComplexField(g, np.full(g.shape, c))).values, c)
    assert np.allclose(interpolate_bl(ComplexField(g, np.full(g.shape, c))).values, c)


def test_delta_gives_full_weighting_pattern():
    g = make_grid(8)
    f = ComplexField.zeros(g)
    f.values[4, 4] = 16
    assert restrict_fw(f).values[2, 2] == 4
    f = ComplexField.zeros(g)
    f.values[3, 4] = 16
    r = restrict_fw(f).values
    assert r[1, 2] == 2 and r[2, 2] == 2
    f = ComplexField.zeros(g)
    f.values[3, 3] = 16
    r = restrict_fw(f).values
    assert r[1, 1] == r[1, 2] == r[2, 1] == r[2, 2] == 1


def test_restrict_rejects_odd():
    with pytest.raises(ValueError):
        restrict_fw(ComplexField.zeros(make_grid(4).__class__(5)))


def test_interpolate_rejects_mismatch():
    with pytest.raises(ValueError):
        interpolate_bl(ComplexField.zeros(make_grid(8)), make_grid(8))


def test_bilinear_reproduces_linear():
    c = make_grid(8)
    x, y = c.coords()
    fine = interpolate_bl(ComplexField(c, x + 2 * y))
    xf, yf = c.refine().coords()
    assert np.allclose(fine.values, xf + 2 * yf)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.complex_numbers(max_magnitude=5, allow_nan=False))
def test_linearity(seed, a):
    rng = np.random.default_rng(seed)
    g = make_grid(16)
    u, v = random_field(g, rng), random_field(g, rng)
    lhs = restrict_fw(ComplexField(g, a * u.values + v.values)).values
    assert np.allclose(lhs, a * restrict_fw(u).values + restrict_fw(v).values)
    c = g.coarsen()
    p, q = random_field(c, rng), random_field(c, rng)
    lhs = interpolate_bl(ComplexField(c, a * p.values + q.values)).values
    assert np.allclose(lhs, a * interpolate_bl(p).values + interpolate_bl(q).values)


def test_adjoint_constant(rng):
    # fine fields vanishing near the boundary see only the interior weights
    g = make_grid(32)
    ratios = []
    for _ in range(10):
        u = random_field(g, rng)
        u.values[:2, :] = u.values[-2:, :] = 0
        u.values[:, :2] = u.values[:, -2:] = 0
        v = random_field(g.coarsen(), rng)
        lhs = np.vdot(v.values, restrict_fw(u).values)
        rhs = np.vdot(interpolate_bl(v).values, u.values)
        ratios.append(rhs / lhs)
    assert np.allclose(ratios, 4.0, rtol=1e-12)


def test_interpolate_restrict_second_order_interior():
    # renormalised boundary weights are only first order, so measure on [1/4, 3/4]^2
    errs = []
    for n in (16, 32, 64, 128):
        g = make_grid(n)
        x, y = g.coords()
        u = np.sin(np.pi * x) * np.sin(np.pi * y)
        back = interpolate_bl(restrict_fw(ComplexField(g, u)), g).values
        core = slice(n // 4, 3 * n // 4 + 1)
        errs.append(np.abs(back - u)[core, core].max())
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    assert np.all(np.abs(ratios - 4) <= 0.15 * 4), ratios


def test_interpolate_restrict_boundary_layer_first_order():
    errs = []
    for n in (16, 32, 64, 128):
        g = make_grid(n)
        x, y = g.coords()
        u = np.sin(np.pi * x) * np.sin(np.pi * y)
        back = interpolate_bl(restrict_fw(ComplexField(g, u)), g).values
        errs.append(np.abs(back - u).max())
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    assert np.all(ratios > 1.8), ratios
