import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psiapprox.errors import IllConditionedError
from psiapprox.extremal import build_uniform
from psiapprox.fourier import (
    AliasingWarning, PeriodicFunction, analyze, convolve, convolve_direct, evaluate, grid, partial_sum,
    psi_derivative, synthesize, trig_l1_norm, trig_zeros,
)
from psiapprox.kernels import KernelSpec, psi_beta_kernel
from psiapprox.modulus import PowerModulus
from psiapprox.psi_functions import ParametricPsi, exponential_psi


def random_poly(rng, M):
    a = rng.standard_normal(M + 1)
    b = rng.standard_normal(M + 1)
    b[0] = 0
    return a, b


class TestAnalyze:
    def test_cosine(self):
        x = grid(64)
        a, b = analyze(np.cos(3 * x))
        expected = np.zeros(17)
        expected[3] = 1
        np.testing.assert_allclose(a, expected, atol=1e-12)
        np.testing.assert_allclose(b, 0, atol=1e-12)

    def test_constant(self):
        a, _ = analyze(np.full(32, 2.5))
        assert a[0] == pytest.approx(5.0)

    def test_roundtrip(self):
        rng = np.random.default_rng(3)
        a, b = random_poly(rng, 7)
        a2, b2 = analyze(synthesize(a, b, 64), 7)
        np.testing.assert_allclose(a2, a, atol=1e-10)
        np.testing.assert_allclose(b2, b, atol=1e-10)

    def test_insufficient_samples(self):
        with pytest.raises(ValueError):
            analyze(np.ones(16), 5)

    def test_aliasing_warning(self):
        x = grid(64)
        with pytest.warns(AliasingWarning):
            analyze(np.sign(np.sin(x)) + 0.0)

    def test_parseval(self):
        rng = np.random.default_rng(5)
        v = rng.standard_normal(256)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AliasingWarning)
            a, b = analyze(v, 64)
        energy = a[0] ** 2 / 2 + np.sum(a[1:] ** 2 + b[1:] ** 2)
        assert energy <= 2 * np.mean(v**2) + 1e-12
        a, b = random_poly(rng, 20)
        s = synthesize(a, b, 256)
        a2, b2 = analyze(s, 64)
        energy = a2[0] ** 2 / 2 + np.sum(a2[1:] ** 2 + b2[1:] ** 2)
        assert energy == pytest.approx(2 * np.mean(s**2), rel=1e-10)


class TestSynthesis:
    def test_fft_matches_direct(self):
        rng = np.random.default_rng(1)
        a, b = random_poly(rng, 30)
        np.testing.assert_allclose(synthesize(a, b, 128), evaluate(a, b, grid(128)), atol=1e-12)

    def test_small_grid_falls_back(self):
        rng = np.random.default_rng(2)
        a, b = random_poly(rng, 30)
        np.testing.assert_allclose(synthesize(a, b, 40), evaluate(a, b, grid(40)), atol=1e-12)


class TestNorms:
    def test_l1_of_cosine(self):
        for k in (1, 3, 8):
            a = np.zeros(k + 1)
            a[k] = 1
            assert trig_l1_norm(a, np.zeros(k + 1)) == pytest.approx(4.0, rel=1e-12)

    def test_l1_against_dense_grid(self):
        rng = np.random.default_rng(4)
        a, b = random_poly(rng, 9)
        dense = np.mean(np.abs(synthesize(a, b, 2**18))) * 2 * np.pi
        assert trig_l1_norm(a, b) == pytest.approx(dense, rel=1e-8)

    def test_zeros(self):
        z = trig_zeros(np.array([0, 0, 1.0]), np.zeros(3))
        np.testing.assert_allclose(np.sort(z), (np.arange(4) + 0.5) * np.pi / 2, atol=1e-12)

    def test_sup_norm(self):
        f = PeriodicFunction([0, 1.0, 0.5], [0, 0.3, 0.0])
        dense = np.max(np.abs(f.samples_at(2**18)))
        assert f.sup_norm() == pytest.approx(dense, rel=1e-9)


class TestPeriodicFunction:
    def test_partial_sum_and_tail(self):
        f = PeriodicFunction([1.0, 2, 3, 4], [0, 1, 1, 1])
        assert partial_sum(f, 2).degree == 1
        np.testing.assert_allclose((partial_sum(f, 2) + f.tail(2)).a, f.a)
        assert partial_sum(PeriodicFunction.harmonic(3), 3).is_zero()

    def test_low_degree_unchanged(self):
        f = PeriodicFunction([1.0, 2, 3])
        np.testing.assert_array_equal(partial_sum(f, 5).a, f.a)

    def test_shift(self):
        f = PeriodicFunction([0.3, 1.0, -0.4], [0, 0.2, 0.7])
        x = np.linspace(0, 6, 13)
        np.testing.assert_allclose(f.shift(0.37)(x), f(x + 0.37), atol=1e-14)

    def test_derivative(self):
        f = PeriodicFunction.harmonic(2, 0.0, 1.0)
        np.testing.assert_allclose(f.derivative()(grid(16)), 2 * np.cos(2 * grid(16)), atol=1e-14)


class TestConvolve:
    def test_single_harmonic(self):
        psi = exponential_psi(2.0)
        f = convolve(PeriodicFunction.harmonic(1), KernelSpec(psi, 0), a0=3.0)
        assert f.a[0] == 3.0 and f.a[1] == pytest.approx(0.5)

    def test_phase_rotation(self):
        psi = exponential_psi(2.0)
        f = convolve(PeriodicFunction.harmonic(1), KernelSpec(psi, 1))
        x = grid(32)
        np.testing.assert_allclose(f(x), 0.5 * np.sin(x), atol=1e-15)

    def test_mean_rejected(self):
        with pytest.raises(ValueError):
            convolve(PeriodicFunction([1.0, 1.0]), KernelSpec(exponential_psi(2.0)))

    def test_against_quadrature_for_extremal(self):
        psi = ParametricPsi(0, 1, 1)
        ext = build_uniform(PowerModulus(1, 1), 4)
        spec = KernelSpec(psi, 0, 4)
        f = convolve(ext.function(N=4096, M=1024), spec)
        x = np.linspace(0, 2 * np.pi, 9, endpoint=False) + 0.1
        direct = convolve_direct(ext, lambda t: psi_beta_kernel(spec, t), x, ext.breakpoints)
        np.testing.assert_allclose(f(x), direct, atol=1e-7)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 12), st.floats(0, 4), st.integers(0, 2**31 - 1))
    def test_coefficient_route_matches_quadrature(self, M, beta, seed):
        rng = np.random.default_rng(seed)
        a, b = random_poly(rng, M)
        a[0] = 0
        phi = PeriodicFunction(a, b)
        spec = KernelSpec(ParametricPsi(0, 0.7, 1), beta)
        x = rng.uniform(0, 2 * np.pi, 4)
        direct = convolve_direct(phi, lambda t: psi_beta_kernel(spec, t), x)
        np.testing.assert_allclose(convolve(phi, spec)(x), direct, atol=1e-7)


class TestPsiDerivative:
    def test_single(self):
        psi = exponential_psi(2.0)
        f = PeriodicFunction.harmonic(2, psi(2.0))
        phi = psi_derivative(f, KernelSpec(psi, 0))
        np.testing.assert_allclose(phi.a, [0, 0, 1.0], atol=1e-15)

    def test_constant_only(self):
        phi = psi_derivative(PeriodicFunction([4.0]), KernelSpec(exponential_psi(2.0)))
        assert phi.is_zero()

    @pytest.mark.parametrize("beta", [0, 0.5, 1, 2.7])
    def test_roundtrip(self, beta):
        rng = np.random.default_rng(7)
        a, b = random_poly(rng, 15)
        f = PeriodicFunction(a, b)
        spec = KernelSpec(ParametricPsi(0, 0.5, 1), beta)
        back = convolve(psi_derivative(f, spec), spec, a0=f.a[0])
        np.testing.assert_allclose(back.a, f.a, atol=1e-9)
        np.testing.assert_allclose(back.b, f.b, atol=1e-9)

    def test_ill_conditioned(self):
        f = PeriodicFunction.harmonic(60)
        with pytest.raises(IllConditionedError):
            psi_derivative(f, KernelSpec(ParametricPsi(0, 1, 1)))
