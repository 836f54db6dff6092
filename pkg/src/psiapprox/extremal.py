"""Extremal functions for the lower bounds in C and L1 and the transform
Phi*_n that carries the main term of their best approximation."""

import math

import numpy as np

from .fourier import PeriodicFunction, grid
from .kernels import KernelSpec, NodeSystem, node_values
from .modulus import e_n
from .quadrature import panel_nodes, refine_edges

TWO_PI = 2.0 * np.pi


def aligned_grid_size(n, N=4096):
    """Smallest common multiple of N and 4n, so nodes x_k and t_k are grid points."""
    return N * (4 * n) // math.gcd(N, 4 * n)


def piecewise_coefficients(func, edges, M, order=16, block=256):
    """Fourier coefficients (a, b) of func over one period by panel quadrature.

    ``edges`` must cover one full period and include every point where func
    is not smooth.
    """
    t, w = panel_nodes(refine_edges(edges, np.pi / max(M, 1)), order)
    fw = func(t) * w / np.pi
    a = np.empty(M + 1)
    b = np.empty(M + 1)
    for s in range(0, M + 1, block):
        k = np.arange(s, min(M + 1, s + block), dtype=float)
        kt = np.outer(k, t)
        a[s:s + k.size] = np.cos(kt) @ fw
        b[s:s + k.size] = np.sin(kt) @ fw
    b[0] = 0.0
    return a, b


def aligned_coefficients(func, t0, P, M, order=16):
    """Fourier coefficients when func is smooth on each panel [t0 + p h, t0 + (p+1) h], h = 2 pi/P.

    Gauss-Legendre quadrature on every panel; for a fixed node position
    inside the panels the sum over panels is a discrete Fourier transform.
    """
    h = TWO_PI / P
    xi, wq = np.polynomial.legendre.leggauss(order)
    xi = 0.5 * (xi + 1.0)
    wq = 0.5 * wq * h
    k = np.arange(M + 1)
    p = np.arange(P)
    c = np.zeros(M + 1, dtype=complex)
    for q in range(order):
        vals = func(t0 + (p + xi[q]) * h)
        F = np.fft.fft(vals)[k % P]
        c += wq[q] * np.exp(-1j * k * (t0 + xi[q] * h)) * F
    c /= np.pi
    a, b = c.real.copy(), -c.imag.copy()
    b[0] = 0.0
    return a, b


class ExtremalUniform:
    """phi*(t) = (-1)^k phi_k(t) on [t_k, t_{k+1}], where phi_k is
    omega(2(x_k - t))/2 left of x_k and -omega(2(t - x_k))/2 right of it.

    ``scale`` multiplies the whole function (2/3 for non-concave omega).
    """

    kind = "C"

    def __init__(self, omega, n, beta=0.0, scale=1.0):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.omega = omega
        self.n = int(n)
        self.nodes = NodeSystem(self.n, beta)
        self.beta = self.nodes.beta
        self.scale = float(scale)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        nodes = self.nodes
        k = nodes.cell_index(t)
        u = np.mod(t - nodes.t[0], TWO_PI)
        xk = np.pi / (2 * self.n) + k * nodes.step
        d = xk - u
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        out = self.scale * sign * np.sign(d) * self.omega(2.0 * np.abs(d)) / 2.0
        return out if out.ndim else float(out)

    @property
    def breakpoints(self):
        return np.concatenate([self.nodes.t[:-1], self.nodes.x[:-1]])

    def coefficients(self, M):
        P = aligned_grid_size(self.n, 2 * max(M, 1))
        return aligned_coefficients(self, self.nodes.t[0], P, M)

    def function(self, N=4096, M=None):
        N = aligned_grid_size(self.n, N)
        M = N // 4 if M is None else M
        a, b = self.coefficients(M)
        a[0] = 0.0
        return PeriodicFunction(a, b, N)

    def alternance_points(self):
        """Points where Phi*_n attains its extreme values with alternating signs.

        ((1+beta) + j) pi/n; for beta = 0 these are the multiples of pi/n.
        """
        return (1.0 + self.beta + np.arange(2 * self.n)) * np.pi / self.n

    def predicted_extreme(self, spec):
        """(2/(pi n)) * sum_k Psi_n(x_k) * e_n(omega)."""
        return self.scale * 2.0 / (np.pi * self.n) * float(np.sum(node_values(spec, self.nodes))) * e_n(self.omega, self.n)


class ExtremalL1:
    """phi*(t) = phi2'(t) - omega(pi/n)/(4 pi), phi2 the periodic extension
    of phi1(t) = omega(2t)/4 on [0, pi/2n), -omega(-2t)/4 on (-pi/2n, 0]
    and 0 elsewhere. Corner derivatives are taken from the right.
    """

    kind = "L1"

    def __init__(self, omega, n, beta=0.0):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.omega = omega
        self.n = int(n)
        self.nodes = NodeSystem(self.n, beta)
        self.beta = self.nodes.beta
        self.half_width = np.pi / (2 * self.n)
        self.shift = float(omega(np.pi / self.n)) / (4 * np.pi)

    def _centered(self, t):
        return np.mod(np.asarray(t, dtype=float) + np.pi, TWO_PI) - np.pi

    def phi2(self, t):
        u = self._centered(t)
        inside = (u > -self.half_width) & (u < self.half_width)
        out = np.where(inside, np.sign(u) * self.omega(2.0 * np.abs(u)) / 4.0, 0.0)
        return out if out.ndim else float(out)

    def __call__(self, t):
        u = self._centered(t)
        inside = (u >= -self.half_width) & (u < self.half_width)
        with np.errstate(invalid="ignore"):
            d = np.where(inside, self.omega.deriv(2.0 * np.abs(u)) / 2.0, 0.0)
        out = d - self.shift
        return out if np.ndim(out) else float(out)

    @property
    def breakpoints(self):
        return np.array([-self.half_width, 0.0, self.half_width])

    def coefficients(self, M, order=16):
        """Coefficients via integration by parts, which avoids omega'.

        a_k = (1/pi) [omega(pi/n)/2 cos(k pi/2n) + (k/2) int_0^{pi/2n} omega(2t) sin kt dt]
        """
        edges = refine_edges([0.0, self.half_width], np.pi / max(M, 1))
        t, w = panel_nodes(edges, order)
        ow = self.omega(2.0 * t) * w
        k = np.arange(M + 1, dtype=float)
        integrals = np.array([np.sin(kk * t) @ ow for kk in k])
        a = (0.5 * float(self.omega(np.pi / self.n)) * np.cos(k * self.half_width) + 0.5 * k * integrals) / np.pi
        a[0] = 0.0
        return a, np.zeros(M + 1)

    def function(self, N=4096, M=None):
        N = aligned_grid_size(self.n, N)
        M = N // 4 if M is None else M
        a, b = self.coefficients(M)
        return PeriodicFunction(a, b, N)

    def sine_moment(self, order=16):
        """Integral of phi2(t) sin(nt) over (-pi/2n, pi/2n)."""
        t, w = panel_nodes(refine_edges([0.0, self.half_width], self.half_width / 8), order)
        return 2.0 * float(np.sum(w * self.omega(2.0 * t) / 4.0 * np.sin(self.n * t)))

    def predicted_l1_norm(self, spec):
        """(4/pi) * sine_moment * sum_k Psi_n(x_k)."""
        return 4.0 / np.pi * self.sine_moment() * float(np.sum(node_values(spec, self.nodes)))


def build_uniform(omega, n, beta=0.0):
    return ExtremalUniform(omega, n, beta)


def build_L1(omega, n, beta=0.0):
    return ExtremalL1(omega, n, beta)


def two_thirds_scaling(ext):
    """The uniform extremal function scaled by 2/3."""
    return ExtremalUniform(ext.omega, ext.n, ext.beta, scale=ext.scale * 2.0 / 3.0)


def step_kernel_factory(spec, nodes):
    """t -> (2/pi) cos(nt - beta pi/2) * Psi_n(x_k) on [t_k, t_{k+1})."""
    values = node_values(spec, nodes)

    def kernel(t):
        return 2.0 / np.pi * np.cos(spec.n * t - spec.phase) * values[nodes.cell_index(t)]

    return kernel


def phi_star_transform(ext, psi, N=4096, order=8):
    """Phi*_n(x) = (2/pi) * integral of phi*(x - t) cos(nt - beta pi/2) step(t) dt on a grid.

    Returns a PeriodicFunction whose ``samples`` are the quadrature values on
    an N-point grid aligned with the nodes. When every breakpoint sits on the
    grid the integral splits into N panels of equal width and becomes a sum
    of circular convolutions; otherwise each grid point is integrated
    separately.
    """
    n = ext.n
    nodes = ext.nodes
    spec = KernelSpec(psi, ext.beta, n)
    N = aligned_grid_size(n, N)
    h = TWO_PI / N
    t0 = nodes.t[0]
    kernel = step_kernel_factory(spec, nodes)
    offsets = (-np.asarray(ext.breakpoints) - t0) / h
    aligned = np.allclose(offsets, np.round(offsets), atol=1e-9) and abs(t0 / h - round(t0 / h)) < 1e-9
    if aligned:
        xi, wq = np.polynomial.legendre.leggauss(order)
        xi = 0.5 * (xi + 1.0)
        wq = 0.5 * wq * h
        m = np.arange(N)
        values = np.zeros(N)
        for q in range(order):
            A = ext(m * h - t0 - xi[q] * h)
            B = wq[q] * kernel(t0 + (m + xi[q]) * h)
            values += np.fft.irfft(np.fft.rfft(A) * np.fft.rfft(B), n=N)
    else:
        from .fourier import convolve_direct

        values = convolve_direct(ext, kernel, grid(N), ext.breakpoints, nodes.t, order=order,
                                 max_width=h, scale=1.0)
    # trigonometric interpolant of the samples (Nyquist term dropped)
    c = np.fft.rfft(values)[: N // 2] * (2.0 / N)
    f = PeriodicFunction(c.real, -c.imag, N)
    f.__dict__["samples"] = values
    return f


def alternance_report(ext, Phi):
    """Values of Phi*_n at the alternance points, their relative spread and sign pattern."""
    N = Phi.N
    idx = np.rint(np.mod(ext.alternance_points(), TWO_PI) / (TWO_PI / N)).astype(int) % N
    v = Phi.samples[idx]
    mags = np.abs(v)
    spread = float((mags.max() - mags.min()) / mags.max()) if mags.max() > 0 else 0.0
    alternating = bool(np.all(np.sign(v) * np.roll(np.sign(v), -1) < 0))
    return {"values": v, "spread": spread, "alternating": alternating, "level": float(mags.mean())}


def count_sign_changes(values, tol=0.0):
    """Sign changes of a periodic sample sequence, skipping entries with |v| <= tol."""
    s = np.sign(values[np.abs(values) > tol])
    if s.size < 2:
        return 0
    return int(np.sum(s != np.roll(s, -1)))


def zero_pattern_report(ext, Phi, tol=1e-7):
    """Check Phi*_n(x_i) = 0 and sign (-1)^i on (x_i, x_{i+1}) on the sample grid."""
    N = Phi.N
    v = Phi.samples
    sup = float(np.max(np.abs(v)))
    h = TWO_PI / N
    xi = np.mod(ext.nodes.x[:-1], TWO_PI)
    idx = np.rint(xi / h).astype(int) % N
    on_grid = np.allclose(idx * h, xi, atol=1e-9)
    at_nodes = np.abs(v[idx]) if on_grid else np.abs(Phi(xi))
    cell = ext.nodes.cell_index(grid(N) - np.pi / (2 * ext.n))  # cells between consecutive x_i
    interior = np.ones(N, dtype=bool)
    interior[idx] = False
    expected = np.where(cell % 2 == 0, 1.0, -1.0)
    signs = np.sign(v)
    matches = signs[interior] == expected[interior]
    pattern = bool(np.all(matches)) or bool(np.all(~matches))
    return {
        "sup": sup,
        "max_at_nodes": float(at_nodes.max()),
        "zeros_ok": bool(at_nodes.max() <= tol * sup),
        "sign_changes": count_sign_changes(v, tol * sup),
        "pattern": pattern,
    }


def l1_norm_by_cells(ext, Phi):
    """Integral of |Phi*_n| as sum over (x_i, x_{i+1}) of |integral of Phi*_n|, Simpson per cell."""
    N = Phi.N
    per = N // (2 * ext.n)
    h = TWO_PI / N
    start = int(round(np.mod(ext.nodes.x[0], TWO_PI) / h))
    v = np.roll(Phi.samples, -start)
    v = np.concatenate([v, v[:1]])
    total = 0.0
    for i in range(2 * ext.n):
        seg = v[i * per:(i + 1) * per + 1]
        if per % 2 == 0:
            w = np.ones(per + 1)
            w[1:-1:2] = 4.0
            w[2:-1:2] = 2.0
            total += abs(h / 3.0 * np.dot(w, seg))
        else:
            total += abs(h * (seg.sum() - 0.5 * (seg[0] + seg[-1])))
    return total


def lipschitz_violation(func, omega, pairs=10**4, span=2 * TWO_PI, seed=0):
    """Largest |f(t1) - f(t2)| - omega(|t1 - t2|) over random pairs."""
    rng = np.random.default_rng(seed)
    t1 = rng.uniform(0.0, span, pairs)
    t2 = np.concatenate([rng.uniform(0.0, span, pairs // 2), t1[pairs // 2:] + rng.uniform(-0.3, 0.3, pairs - pairs // 2)])
    return float(np.max(np.abs(func(t1) - func(t2)) - omega(np.abs(t1 - t2))))


def l1_shift_violation(func, omega, shifts=24, breakpoints=None):
    """Largest ||f(. + h) - f||_L1 - omega(|h|) over a set of shifts h in (0, pi].

    Each norm is integrated with scipy's adaptive quadrature, split at the
    breakpoints of f and of its shift, so jumps and integrable endpoint
    singularities are handled.
    """
    from scipy.integrate import quad

    bp = getattr(func, "breakpoints", ()) if breakpoints is None else breakpoints
    bp = np.mod(np.asarray(bp, dtype=float), TWO_PI)
    worst = -np.inf
    for h in np.geomspace(1e-3, np.pi, shifts):
        cuts = np.unique(np.concatenate([[0.0, TWO_PI], bp, np.mod(bp - h, TWO_PI)]))
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a > 1e-14:
                total += quad(lambda x: abs(func(x + h) - func(x)), a, b, limit=200, epsabs=1e-13)[0]
        worst = max(worst, total - float(omega(h)))
    return float(worst)
