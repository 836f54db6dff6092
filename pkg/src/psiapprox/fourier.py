"""2 pi-periodic functions held as Fourier coefficients, with analysis,
synthesis, the psi-convolution and its inverse.

Convention: f(x) = a[0]/2 + sum_{k>=1} (a[k] cos kx + b[k] sin kx).
"""

from functools import cached_property
import math
import warnings

import numpy as np

from .quadrature import panel_nodes, refine_edges

TWO_PI = 2.0 * np.pi


class AliasingWarning(UserWarning):
    pass


def grid(N):
    return TWO_PI * np.arange(N) / N


def analyze(samples, M=None):
    """Trapezoidal Fourier coefficients (a, b) up to harmonic M."""
    samples = np.asarray(samples, dtype=float)
    N = samples.size
    M = N // 4 if M is None else int(M)
    if N < 4 * M:
        raise ValueError(f"{N} samples cannot resolve degree {M}; need N >= 4M")
    F = np.fft.rfft(samples)
    power = np.abs(F) ** 2
    high = power[int(3 * N / 8):].sum()
    if high > 1e-6 * power.sum() and power.sum() > 0:
        warnings.warn("significant energy near the Nyquist frequency", AliasingWarning, stacklevel=2)
    a = 2.0 * F.real[: M + 1] / N
    b = -2.0 * F.imag[: M + 1] / N
    b[0] = 0.0
    return a, b


def synthesize(a, b, N):
    """Values on the uniform N-point grid; needs N > 2 * degree."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    M = a.size - 1
    if N <= 2 * M:
        return evaluate(a, b, grid(N))
    C = np.zeros(N // 2 + 1, dtype=complex)
    C[: M + 1] = 0.5 * N * (a - 1j * b)
    C[0] = 0.5 * N * a[0]
    return np.fft.irfft(C, n=N)


def evaluate(a, b, x, chunk=2048):
    """Direct summation of the series at arbitrary points."""
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x).ravel()
    k = np.arange(a.size, dtype=float)
    aa = np.asarray(a, dtype=float).copy()
    aa[0] *= 0.5
    out = np.empty(flat.size)
    for s in range(0, flat.size, chunk):
        kx = np.outer(flat[s:s + chunk], k)
        out[s:s + chunk] = np.cos(kx) @ aa + np.sin(kx) @ b
    return out.reshape(x.shape) if x.ndim else float(out[0])


def antiderivative(a, b, x):
    """G(x) = a0 x/2 + sum (a_k sin kx - b_k cos kx)/k."""
    x = np.asarray(x, dtype=float)
    k = np.arange(1, a.size, dtype=float)
    kx = np.outer(np.atleast_1d(x).ravel(), k)
    out = 0.5 * a[0] * np.atleast_1d(x).ravel() + np.sin(kx) @ (a[1:] / k) - np.cos(kx) @ (b[1:] / k)
    return out.reshape(x.shape) if x.ndim else float(out[0])


def trig_zeros(a, b, resolution=None, iterations=40):
    """Sign changes of a trigonometric series on [0, 2 pi), refined by bisection.

    Zeros closer together than the sampling resolution can be missed; their
    contribution to any integral of |f| is of third order in the spacing.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    M = a.size - 1
    N = resolution or max(1 << 14, 16 * M)
    x = grid(N)
    v = synthesize(a, b, N)
    exact = x[v == 0.0]
    s = np.sign(v)
    nxt = np.roll(s, -1)
    idx = np.nonzero(s * nxt < 0)[0]
    lo = x[idx]
    hi = lo + TWO_PI / N
    flo = v[idx]
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fm = evaluate(a, b, mid)
        same = fm * flo > 0
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    roots = np.mod(0.5 * (lo + hi), TWO_PI)
    return np.sort(np.concatenate([roots, exact]))


def trig_l1_norm(a, b, resolution=None):
    """Integral of |f| over a period, exact up to root-finding accuracy.

    Between consecutive sign changes the integral of f is a difference of
    antiderivative values.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    z = trig_zeros(a, b, resolution)
    if z.size == 0:
        return abs(math.pi * a[0])
    pts = np.concatenate([z, [z[0] + TWO_PI]])
    G = antiderivative(a, b, pts)
    return float(np.sum(np.abs(np.diff(G))))


class PeriodicFunction:
    """A 2 pi-periodic function given by its Fourier coefficients.

    ``N`` is the size of the default sampling grid used for ``samples``.
    """

    def __init__(self, a, b=None, N=4096):
        a = np.atleast_1d(np.asarray(a, dtype=float)).copy()
        b = np.zeros_like(a) if b is None else np.atleast_1d(np.asarray(b, dtype=float)).copy()
        size = max(a.size, b.size)
        self.a = np.pad(a, (0, size - a.size))
        self.b = np.pad(b, (0, size - b.size))
        self.b[0] = 0.0
        self.N = int(N)

    @classmethod
    def from_samples(cls, samples, M=None):
        a, b = analyze(samples, M)
        return cls(a, b, N=len(samples))

    @classmethod
    def from_callable(cls, func, N=4096, M=None):
        return cls.from_samples(func(grid(N)), M)

    @classmethod
    def harmonic(cls, k, cos=1.0, sin=0.0, N=4096):
        a = np.zeros(k + 1)
        b = np.zeros(k + 1)
        a[k], b[k] = cos, sin
        if k == 0:
            a[0] = 2.0 * cos
        return cls(a, b, N)

    @property
    def M(self):
        return self.a.size - 1

    @property
    def degree(self):
        nz = np.nonzero((self.a != 0) | (self.b != 0))[0]
        return int(nz[-1]) if nz.size else 0

    @property
    def grid(self):
        return grid(self.N)

    @cached_property
    def samples(self):
        return synthesize(self.a, self.b, self.N)

    def samples_at(self, N):
        return synthesize(self.a, self.b, N)

    def __call__(self, x):
        return evaluate(self.a, self.b, x)

    def derivative(self):
        k = np.arange(self.a.size, dtype=float)
        return PeriodicFunction(k * self.b, -k * self.a, self.N)

    def antiderivative(self, x):
        return antiderivative(self.a, self.b, x)

    def partial_sum(self, n):
        """Fourier sum of degree n - 1."""
        m = max(0, min(n, self.a.size))
        return PeriodicFunction(self.a[:m] if m else [0.0], self.b[:m] if m else [0.0], self.N)

    def tail(self, n):
        """f minus its Fourier sum of degree n - 1."""
        a, b = self.a.copy(), self.b.copy()
        a[:n] = 0.0
        b[:n] = 0.0
        return PeriodicFunction(a, b, self.N)

    def shift(self, h):
        """x -> f(x + h)."""
        k = np.arange(self.a.size, dtype=float)
        c, s = np.cos(k * h), np.sin(k * h)
        return PeriodicFunction(self.a * c + self.b * s, self.b * c - self.a * s, self.N)

    def _binary(self, other, sign):
        size = max(self.a.size, other.a.size)
        a = np.pad(self.a, (0, size - self.a.size)) + sign * np.pad(other.a, (0, size - other.a.size))
        b = np.pad(self.b, (0, size - self.b.size)) + sign * np.pad(other.b, (0, size - other.b.size))
        return PeriodicFunction(a, b, max(self.N, other.N))

    def __add__(self, other):
        return self._binary(other, 1.0)

    def __sub__(self, other):
        return self._binary(other, -1.0)

    def __mul__(self, c):
        return PeriodicFunction(c * self.a, c * self.b, self.N)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    @property
    def mean(self):
        return 0.5 * self.a[0]

    def is_zero(self):
        return not (np.any(self.a) or np.any(self.b))

    def sup_norm(self, N=None):
        """Grid maximum of |f|, sharpened by Newton steps at the top samples."""
        N = N or max(self.N, 8 * self.M + 8)
        v = self.samples_at(N)
        if not np.any(v):
            return 0.0
        x0 = grid(N)[np.argsort(np.abs(v))[-4:]]
        d1, d2 = self.derivative(), self.derivative().derivative()
        best = np.max(np.abs(v))
        x = x0.copy()
        for _ in range(6):
            step = d1(x) / np.where(d2(x) == 0, 1.0, d2(x))
            step = np.clip(step, -TWO_PI / N, TWO_PI / N)
            x = x - step
        return float(max(best, np.max(np.abs(self(x)))))

    def l1_norm(self):
        return trig_l1_norm(self.a, self.b)

    def zeros(self, resolution=None):
        return trig_zeros(self.a, self.b, resolution)

    def __repr__(self):
        return f"PeriodicFunction(M={self.M}, N={self.N})"


def partial_sum(f, n):
    return f.partial_sum(n)


def _psi_of(spec, k):
    return spec.psi(np.asarray(k, dtype=float))


def convolve(phi, spec, a0=0.0, kmin=1, mean_tol=1e-9):
    """f = a0/2 + (1/pi) * integral of phi(x - t) Psi_beta(t) dt.

    Acts diagonally: harmonic k of phi is multiplied by psi(k) and shifted
    in phase by beta pi/2. Harmonics below ``kmin`` are dropped, which lets
    callers skip the polynomial part when psi(k) would overflow there.
    """
    scale = 1.0 + np.max(np.abs(np.concatenate([phi.a[1:], phi.b[1:]]))) if phi.M else 1.0
    if abs(phi.mean) > mean_tol * scale:
        raise ValueError(f"phi must be orthogonal to constants (mean {phi.mean:.3g})")
    k = np.arange(phi.a.size)
    keep = k >= max(1, kmin)
    p = np.zeros(phi.a.size)
    p[keep] = _psi_of(spec, k[keep])
    th = spec.phase
    a = p * (phi.a * math.cos(th) - phi.b * math.sin(th))
    b = p * (phi.a * math.sin(th) + phi.b * math.cos(th))
    a[0] = a0
    return PeriodicFunction(a, b, phi.N)


def psi_derivative(f, spec, min_psi=1e-14):
    """(psi, beta)-derivative: the mean-free phi with f = a0/2 + phi * Psi_beta."""
    from .errors import IllConditionedError

    if f.a.size < 2:
        return PeriodicFunction([0.0], N=f.N)
    k = np.arange(1, f.a.size)
    p = _psi_of(spec, k)
    mag = np.hypot(f.a[1:], f.b[1:])
    small = p < min_psi
    if np.any(small & (mag > min_psi * max(1.0, mag.max()))):
        bad = int(k[np.argmax(small & (mag > min_psi * max(1.0, mag.max())))])
        raise IllConditionedError(f"psi({bad}) = {_psi_of(spec, bad):.3g} too small to divide by")
    inv = np.where(small, 0.0, 1.0 / np.where(small, 1.0, p))
    th = spec.phase
    a = np.zeros(f.a.size)
    b = np.zeros(f.a.size)
    a[1:] = inv * (f.a[1:] * math.cos(th) + f.b[1:] * math.sin(th))
    b[1:] = inv * (-f.a[1:] * math.sin(th) + f.b[1:] * math.cos(th))
    return PeriodicFunction(a, b, f.N)


def convolve_direct(phi, kernel, x, breakpoints=(), kernel_breakpoints=(), order=16, max_width=None,
                    scale=1.0 / np.pi):
    """scale * integral over [0, 2 pi) of phi(x - t) kernel(t) dt by panel quadrature.

    Panels are split wherever x - t meets a breakpoint of phi so that the
    integrand is smooth on every panel. Serves as an independent check of
    the coefficient-space routes.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    bp = np.mod(np.asarray(breakpoints, dtype=float), TWO_PI)
    kbp = np.mod(np.asarray(kernel_breakpoints, dtype=float), TWO_PI)
    max_width = max_width or TWO_PI / 64
    out = np.empty(x.size)
    for i, xi in enumerate(x):
        edges = np.unique(np.concatenate([[0.0, TWO_PI], np.mod(xi - bp, TWO_PI), kbp]))
        edges = refine_edges(edges, max_width)
        t, w = panel_nodes(edges, order)
        out[i] = scale * np.sum(w * phi(xi - t) * kernel(t))
    return out
