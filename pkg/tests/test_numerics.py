"""Quadrature and superposition primitives against independent references."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate as sci

from qensemble.numerics import (
    ComplexField,
    Grid1D,
    KBall,
    SingleMode,
    integrate_1d,
    integrate_ball,
    integrate_real,
    line_superposition,
    radial_superposition,
    superpose,
    superpose_field,
)

TWO_PI = 2.0 * np.pi


class TestGrid1D:
    def test_points_and_spacing(self):
        grid = Grid1D(-1.0, 1.0, 5)
        assert_allclose(grid.points(), [-1.0, -0.5, 0.0, 0.5, 1.0])
        assert grid.spacing == 0.5

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"x_min": 0.0, "x_max": 1.0, "n": 1},
            {"x_min": 1.0, "x_max": 1.0, "n": 10},
            {"x_min": 2.0, "x_max": 1.0, "n": 10},
            {"x_min": float("nan"), "x_max": 1.0, "n": 10},
        ],
    )
    def test_rejects_bad_grids(self, kwargs):
        with pytest.raises(ValueError):
            Grid1D(**kwargs)


class TestKBall:
    def test_nodes_are_odd_and_span(self):
        ball = KBall(2.0, n_k=10)
        nodes = ball.nodes()
        assert nodes.size % 2 == 1
        assert nodes[0] == 0.0 and nodes[-1] == 2.0

    def test_rejects_negative_radius(self):
        with pytest.raises(ValueError):
            KBall(-1.0)


class TestComplexField:
    def test_density(self):
        grid = Grid1D(0.0, 1.0, 3)
        field = ComplexField(grid, np.array([1.0, 1j, 1.0 + 1j]))
        assert_allclose(field.density(), [1.0, 1.0, 2.0])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ComplexField(Grid1D(0.0, 1.0, 3), np.zeros(4, dtype=complex))

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            ComplexField(Grid1D(0.0, 1.0, 2), np.array([1.0, np.inf], dtype=complex))


class TestIntegrateReal:
    @pytest.mark.parametrize("n,tol", [(1001, 1e-10), (1000, 1e-10), (101, 1e-7), (3, 0.1)])
    def test_sine_integral(self, n, tol):
        # even node counts exercise the end-correction branch
        x = np.linspace(0.0, np.pi, n)
        assert abs(integrate_real(np.sin(x), x[1] - x[0]) - 2.0) <= tol

    def test_matches_scipy_on_odd_grids(self):
        x = np.linspace(0.0, 3.0, 201)
        y = np.exp(-x) * np.cos(4.0 * x)
        ours = integrate_real(y, x[1] - x[0])
        theirs = sci.simpson(y, x=x)
        assert_allclose(ours, theirs, rtol=0.0, atol=1e-14)

    def test_cubic_is_exact(self):
        x = np.linspace(-1.0, 2.0, 7)
        y = x**3 - 2.0 * x
        exact = (2.0**4 - 1.0) / 4.0 - (2.0**2 - 1.0)
        assert_allclose(integrate_real(y, x[1] - x[0]), exact, rtol=0.0, atol=1e-14)


class TestIntegrate1D:
    def test_oscillatory_cancellation(self):
        grid = Grid1D(0.0, TWO_PI, 1001)
        field = ComplexField(grid, np.exp(1j * grid.points()))
        assert abs(integrate_1d(field)) <= 1e-12

    def test_complex_polynomial(self):
        grid = Grid1D(0.0, 1.0, 101)
        x = grid.points()
        field = ComplexField(grid, x + 1j * x**2)
        assert_allclose(integrate_1d(field), 0.5 + 1j / 3.0, rtol=0.0, atol=1e-12)


class TestIntegrateBall:
    def test_linear_radial_profile(self):
        # integrand k * k^2 is cubic, which the rule integrates exactly
        ball = KBall(2.0)
        value = integrate_ball(ball.nodes().astype(complex), ball)
        assert_allclose(value.real, 16.0 * np.pi, rtol=1e-13)
        assert value.imag == 0.0

    def test_against_scipy_quad(self):
        ball = KBall(1.5, n_k=801)
        k = ball.nodes()
        value = integrate_ball(np.exp(-(k**2)).astype(complex), ball)
        ref, _ = sci.quad(lambda q: 4.0 * np.pi * q * q * np.exp(-(q**2)), 0.0, 1.5)
        assert_allclose(value.real, ref, rtol=1e-10)


class TestRadialSuperposition:
    def test_flat_origin_value(self):
        # (2 pi)^(-3/2) * (4 pi / 3) * k_max^3 at the origin
        psi = radial_superposition(lambda k: np.ones_like(k, dtype=complex), KBall(1.0), 0.0)
        assert_allclose(psi[0].real, 0.2659615202676218, rtol=0.0, atol=1e-15)
        assert psi[0].imag == 0.0

    @pytest.mark.parametrize("r", [0.3, 1.0, 4.7])
    def test_flat_profile_against_quad(self, r):
        psi = radial_superposition(lambda k: np.ones_like(k, dtype=complex), KBall(1.0, 2001), r)
        ref, _ = sci.quad(lambda k: k * k * np.sin(k * r) / (k * r), 0.0, 1.0)
        ref *= 4.0 * np.pi * TWO_PI**-1.5
        assert_allclose(psi[0].real, ref, rtol=1e-10)

    def test_decaying_kernel_monotone(self):
        r = np.linspace(0.0, 3.0, 31)
        psi = radial_superposition(
            lambda k: np.ones_like(k, dtype=complex), KBall(1.0), r, kernel="decaying"
        )
        assert np.all(psi.real > 0.0)
        assert np.all(np.diff(psi.real) < 0.0)
        # both kernels agree at the origin where the kernel factor is one
        osc = radial_superposition(lambda k: np.ones_like(k, dtype=complex), KBall(1.0), 0.0)
        assert_allclose(psi[0], osc[0], rtol=1e-12)

    def test_unknown_kernel_rejected(self):
        with pytest.raises(ValueError):
            radial_superposition(
                lambda k: np.ones_like(k, dtype=complex), KBall(1.0), 0.5, kernel="weird"
            )

    def test_single_mode_sifting(self):
        mode = SingleMode(0.5)
        inside = radial_superposition(mode, KBall(1.0), 2.0)
        expected = TWO_PI**-1.5 * 4.0 * np.pi * 0.25 * np.sin(1.0) / 1.0
        assert_allclose(inside[0].real, expected, rtol=1e-14)
        outside = radial_superposition(SingleMode(3.0), KBall(1.0), 2.0)
        assert outside[0] == 0.0


class TestLineSuperposition:
    def test_flat_band_closed_form(self):
        K = 2.0
        x = np.linspace(-5.0, 5.0, 401)
        psi = line_superposition(lambda k: np.ones_like(k, dtype=complex), (-K, K), x)
        with np.errstate(invalid="ignore"):
            ref = 2.0 * np.sin(K * x) / x / math.sqrt(TWO_PI)
        ref[x == 0.0] = 2.0 * K / math.sqrt(TWO_PI)
        assert np.abs(psi.real - ref).max() <= 1e-10
        assert np.abs(psi.imag).max() <= 1e-12

    def test_single_mode_inside_and_outside(self):
        x = np.linspace(-1.0, 1.0, 11)
        inside = line_superposition(SingleMode(0.5), (0.0, 1.0), x)
        assert_allclose(inside, np.exp(0.5j * x) / math.sqrt(TWO_PI), rtol=0.0, atol=1e-15)
        outside = line_superposition(SingleMode(2.0), (0.0, 1.0), x)
        assert np.all(outside == 0.0)

    def test_empty_interval_gives_zero(self):
        psi = line_superposition(lambda k: np.ones_like(k, dtype=complex), (1.0, 1.0), 0.3)
        assert psi[0] == 0.0


class TestSuperpose:
    def test_dimension_dispatch(self):
        flat = lambda k: np.ones_like(k, dtype=complex)  # noqa: E731
        three = superpose(flat, KBall(1.0), 0.0, dimension=3)
        assert_allclose(three.real, 0.2659615202676218, rtol=0.0, atol=1e-15)
        one = superpose(flat, (0.0, 1.0), 0.0, dimension=1)
        assert_allclose(one.real, 1.0 / math.sqrt(TWO_PI), rtol=1e-12)

    def test_dimension_three_needs_ball(self):
        with pytest.raises(ValueError):
            superpose(lambda k: np.ones_like(k, dtype=complex), (0.0, 1.0), 0.0, dimension=3)

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            superpose(lambda k: np.ones_like(k, dtype=complex), (0.0, 1.0), 0.0, dimension=2)

    def test_field_wrapper_matches_pointwise(self):
        grid = Grid1D(0.0, 2.0, 5)
        flat = lambda k: np.ones_like(k, dtype=complex)  # noqa: E731
        field = superpose_field(flat, KBall(1.0), grid, dimension=3)
        single = [superpose(flat, KBall(1.0), float(r), dimension=3) for r in grid.points()]
        assert_allclose(field.values, single, rtol=0.0, atol=1e-15)
