"""The linear method U*_{n-1} built from the Fourier coefficients of the
(psi, beta)-derivative, and a check of its integral deviation formula."""

from dataclasses import dataclass

import numpy as np

from .fourier import PeriodicFunction, convolve, grid, psi_derivative
from .kernels import KernelSpec, kernel_Psi_n, kernel_Psi_n_beta


@dataclass
class UStarCoefficients:
    n: int
    lam: np.ndarray
    nu: np.ndarray


def coefficients(psi, beta, n):
    """Multipliers lambda_k and nu_k for k = 1..n-1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    k = np.arange(1, n, dtype=float)
    th = beta * np.pi / 2
    p, m, q = psi(k), psi(2 * n - k), psi(2 * n + k)
    lam = (p - m - q) * np.cos(th)
    nu = (p - m + q) * np.sin(th)
    # cos(pi/2) is not exactly zero in floating point
    lam[np.abs(np.cos(th)) < 1e-15] = 0.0
    nu[np.abs(np.sin(th)) < 1e-15] = 0.0
    return UStarCoefficients(n, lam, nu)


def apply(f, psi, beta, n, phi=None):
    """U*_{n-1}(f), a polynomial of degree <= n-1.

    ``phi`` holds the Fourier coefficients of the (psi, beta)-derivative of
    f; when omitted they are recovered from f.
    """
    if phi is None:
        phi = psi_derivative(f, KernelSpec(psi, beta, n))
    c = coefficients(psi, beta, n)
    a = np.zeros(n)
    b = np.zeros(n)
    a[0] = f.a[0]
    m = min(n, phi.a.size)
    pa, pb = phi.a[1:m], phi.b[1:m]
    lam, nu = c.lam[: m - 1], c.nu[: m - 1]
    a[1:m] = lam * pa - nu * pb
    b[1:m] = lam * pb + nu * pa
    return PeriodicFunction(a, b, f.N)


def deviation_kernel(spec, t):
    """2 cos(n t - beta pi/2) Psi_n(t) - Psi_{n,beta}(t)."""
    return 2.0 * np.cos(spec.n * t - spec.phase) * kernel_Psi_n(spec, t) - kernel_Psi_n_beta(spec, t)


def deviation_residual(phi, psi, beta, n, N=4096, a0=0.0):
    """Largest grid discrepancy in f - U*f = (1/pi) int phi(x - t) K(t) dt.

    f is assembled from ``phi`` (mean free) in coefficient space, so the left
    side never touches the kernels. The right side samples the kernel K on
    the grid and forms the periodic convolution with the trapezoid rule,
    which is spectrally accurate for smooth integrands.
    """
    spec = KernelSpec(psi, beta, n)
    f = convolve(phi, spec, a0=a0)
    lhs = (f - apply(f, psi, beta, n, phi=phi)).samples_at(N)
    t = grid(N)
    kern = deviation_kernel(spec, t)
    ph = phi.samples_at(N)
    rhs = np.real(np.fft.ifft(np.fft.fft(ph) * np.fft.fft(kern))) * (2.0 / N)
    return float(np.max(np.abs(lhs - rhs)))


def random_phi(rng, degree, N=4096):
    """Mean-free band-limited phi with coefficients decaying like 1/k."""
    k = np.arange(degree + 1, dtype=float)
    k[0] = 1.0
    a = rng.standard_normal(degree + 1) / k
    b = rng.standard_normal(degree + 1) / k
    a[0] = b[0] = 0.0
    return PeriodicFunction(a, b, N)
