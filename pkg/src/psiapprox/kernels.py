"""Series kernels built from psi, node systems and the bounds used to
control them.

Kernels evaluated here:

    Psi_beta(t)   = sum_{k>=1} psi(k) cos(k t - beta pi/2)
    Psi_n(t)      = psi(n)/2 + sum_{k>=1} psi(n+k) cos(k t)
    Psi_{n,beta}  = sum_{k>=n} psi(2n+k) cos(k t + beta pi/2)

plus the step function that freezes Psi_n at the midpoints x_k of the
cells [t_k, t_{k+1}).
"""

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from .errors import DomainError, TruncationError
from .psi_functions import PsiFunction, ParametricPsi, eta, mu
from .fourier import trig_l1_norm

TWO_PI = 2.0 * np.pi


def tail_sum_bound(psi, m):
    """Upper bound 2 psi(m) (eta(m) - m) / (1 - 2/mu(m)) for the integral of psi over [m, inf)."""
    e = eta(psi, m)
    mu_m = m / (e - m)
    if mu_m <= 2:
        raise DomainError(f"mu({m}) = {mu_m:.4g} <= 2")
    return 2.0 * psi(m) * (e - m) / (1.0 - 2.0 / mu_m)


def certified_terms(psi, first, eps=1e-12, max_terms=10**6):
    """Number J of terms psi(first), ..., psi(first+J-1) whose omitted tail
    sum_{j>=J} psi(first+j) is certified below eps.

    The certificate is psi(m) + tail_sum_bound(psi, m) with m = first + J.
    """
    def certified(J):
        m = first + J
        if psi(m) > eps:
            return False
        try:
            return psi(m) + tail_sum_bound(psi, m) <= eps
        except DomainError:
            return False

    J = 1
    while not certified(J):
        J *= 2
        if J > max_terms:
            raise TruncationError(f"tail of {psi.name} from {first} not below {eps:g} within {max_terms} terms")
    lo, hi = J // 2, J
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if certified(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class KernelSpec:
    """psi, phase beta (reduced mod 4), index n and truncation policy."""

    psi: PsiFunction
    beta: float = 0.0
    n: int = 1
    eps_tail: float = 1e-12
    max_terms: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta) % 4.0)
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def phase(self):
        return self.beta * np.pi / 2

    @cached_property
    def psi_beta_terms(self):
        return certified_terms(self.psi, 1, self.eps_tail, self.max_terms)

    @cached_property
    def psi_n_terms(self):
        return certified_terms(self.psi, self.n + 1, self.eps_tail, self.max_terms)

    @cached_property
    def psi_n_beta_terms(self):
        return certified_terms(self.psi, 3 * self.n, self.eps_tail, self.max_terms)


@dataclass(frozen=True)
class NodeSystem:
    """x_k = (1+beta) pi/(2n) + k pi/n and t_k = x_k - pi/(2n), k = 0..2n."""

    n: int
    beta: float = 0.0
    x: np.ndarray = field(init=False, repr=False)
    t: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        beta = float(self.beta) % 4.0
        object.__setattr__(self, "beta", beta)
        k = np.arange(2 * self.n + 1)
        x = (1 + beta) * np.pi / (2 * self.n) + k * np.pi / self.n
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", x - np.pi / (2 * self.n))

    @property
    def step(self):
        return np.pi / self.n

    def cell_index(self, t):
        """k with t in [t_k, t_{k+1}) modulo 2 pi, k in 0..2n-1."""
        u = (np.asarray(t, dtype=float) - self.t[0]) / self.step
        k = np.floor(u + 1e-9).astype(int)
        return np.mod(k, 2 * self.n)


def _cos_series(coeffs, freqs, t, phase=0.0, chunk=4096):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.shape)
    flat_t, flat_out = t.ravel(), out.ravel()
    for s in range(0, flat_t.size, chunk):
        block = flat_t[s:s + chunk]
        flat_out[s:s + chunk] = np.cos(np.outer(block, freqs) + phase) @ coeffs
    return out


def _maybe_scalar(t, out):
    return float(out[0]) if np.ndim(t) == 0 else out


def psi_values(psi, start, count):
    return psi(np.arange(start, start + count, dtype=float))


def psi_beta_kernel(spec, t):
    """Psi_beta(t) = sum_{k>=1} psi(k) cos(k t - beta pi/2)."""
    K = spec.psi_beta_terms
    k = np.arange(1, K + 1, dtype=float)
    out = _cos_series(psi_values(spec.psi, 1, K), k, t, -spec.phase)
    return _maybe_scalar(t, out)


def poisson_kernel(alpha, r, beta, t, eps_tail=1e-12):
    """Generalized Poisson kernel, coefficients exp(-alpha k^r)."""
    return psi_beta_kernel(KernelSpec(ParametricPsi(0.0, alpha, r), beta, eps_tail=eps_tail), t)


def kernel_Psi_n(spec, t):
    """Psi_n(t) = psi(n)/2 + sum_{k>=1} psi(n+k) cos(k t)."""
    K = spec.psi_n_terms
    k = np.arange(1, K + 1, dtype=float)
    out = 0.5 * spec.psi(spec.n) + _cos_series(psi_values(spec.psi, spec.n + 1, K), k, t)
    return _maybe_scalar(t, out)


def kernel_Psi_n_beta(spec, t):
    """Psi_{n,beta}(t) = sum_{k>=n} psi(2n+k) cos(k t + beta pi/2)."""
    K = spec.psi_n_beta_terms
    n = spec.n
    k = np.arange(n, n + K, dtype=float)
    out = _cos_series(psi_values(spec.psi, 3 * n, K), k, t, spec.phase)
    return _maybe_scalar(t, out)


def node_values(spec, nodes=None):
    """Psi_n(x_k) for k = 0..2n-1."""
    nodes = NodeSystem(spec.n, spec.beta) if nodes is None else nodes
    return kernel_Psi_n(spec, nodes.x[:-1])


def piecewise_kernel(spec, nodes, t, values=None):
    """Step kernel equal to Psi_n(x_k) on [t_k, t_{k+1})."""
    values = node_values(spec, nodes) if values is None else values
    out = values[nodes.cell_index(t)]
    return float(out) if np.ndim(t) == 0 else out


def kernel_mean(spec):
    """(1/pi) * integral of Psi_n over a period, by the trapezoidal rule."""
    N = max(4096, 4 * (spec.psi_n_terms + 1))
    t = TWO_PI * np.arange(N) / N
    return 2.0 * float(np.mean(kernel_Psi_n(spec, t)))


def riemann_sum_deviation(spec, nodes=None, direct=False):
    """(1/n) sum_k Psi_n(x_k) - psi(n).

    Summing cos(j x_k) over the 2n equispaced nodes leaves only the
    harmonics j = 2nm, so the deviation equals
    2 sum_{m>=1} psi((2m+1)n) cos(2nm x_0). That form avoids the
    cancellation in the node sum; ``direct=True`` uses the node sum.
    """
    nodes = NodeSystem(spec.n, spec.beta) if nodes is None else nodes
    n = spec.n
    if direct:
        return float(np.sum(node_values(spec, nodes)) / n - spec.psi(n))
    J = max(1, spec.psi_n_terms // (2 * n) + 1)
    m = np.arange(1, J + 1, dtype=float)
    return float(2.0 * np.sum(spec.psi((2 * m + 1) * n) * np.cos(2 * n * m * nodes.x[0])))


def lemma_scale(psi, n):
    """psi(n+1) (1/n + 1/(mu(n) - 2)); requires mu(n) > 2."""
    mu_n = mu(psi, n)
    if mu_n <= 2:
        raise DomainError(f"mu({n}) = {mu_n:.4g} <= 2")
    return psi(n + 1) * (1.0 / n + 1.0 / (mu_n - 2.0))


def total_variation_Psi_n(spec):
    """Variation of Psi_n over a period: L1 norm of sum k psi(n+k) sin kt.

    The weighted tail is cut where (n+K) psi(n+K) + integral of t psi(t)
    beyond is below eps_tail; that bound dominates sum_{k>K} k psi(n+k).
    """
    from scipy.integrate import quad

    psi, n = spec.psi, spec.n
    K = spec.psi_n_terms
    while True:
        m = n + K + 1
        tail = m * psi(m) + quad(lambda s: s * psi(s), m, np.inf, limit=200)[0]
        if tail <= spec.eps_tail:
            break
        K *= 2
        if K > spec.max_terms:
            raise TruncationError("variation series tail not certified")
    k = np.arange(1, K + 1, dtype=float)
    sin_coeffs = -k * psi_values(psi, n + 1, K)
    return trig_l1_norm(np.zeros(K + 1), np.concatenate([[0.0], sin_coeffs]))


def piecewise_l1_gap(spec, nodes=None, per_cell=64):
    """Integral of |Psi_n - step kernel| over a period.

    The constant psi(n)/2 cancels in the difference, so only the oscillating
    part sum psi(n+k) cos kt is used (this keeps full relative precision when
    the oscillation is far below psi(n)). On each cell its sign changes
    relative to the cell level are located on a fine subgrid, and the pieces
    are integrated exactly through the antiderivative.
    """
    nodes = NodeSystem(spec.n, spec.beta) if nodes is None else nodes
    K = spec.psi_n_terms
    k = np.arange(1, K + 1, dtype=float)
    c = psi_values(spec.psi, spec.n + 1, K)

    def G(t):
        return np.sin(np.outer(np.asarray(t, dtype=float), k)) @ (c / k)

    def F(t):
        return np.cos(np.outer(np.asarray(t, dtype=float), k)) @ c

    levels = F(nodes.x[:-1])
    total = 0.0
    for j in range(2 * spec.n):
        a, b = nodes.t[j], nodes.t[j + 1]
        level = levels[j]
        s = np.linspace(a, b, per_cell + 1)
        h = F(s) - level
        cuts = [a]
        for i in np.nonzero(h[:-1] * h[1:] < 0)[0]:
            lo, hi = s[i], s[i + 1]
            flo = h[i]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                fm = F(np.array([mid]))[0] - level
                if fm * flo > 0:
                    lo, flo = mid, fm
                else:
                    hi = mid
            cuts.append(0.5 * (lo + hi))
        # the difference vanishes at x_j itself, which may be a subgrid point
        cuts.extend(s[h == 0.0])
        cuts.append(nodes.x[j])
        cuts.append(b)
        cuts = np.unique(cuts)
        pieces = np.diff(G(cuts)) - level * np.diff(cuts)
        total += float(np.sum(np.abs(pieces)))
    return total


def telyakovskii_Q(psi, n, beta, eps_tail=1e-12):
    """Q_n for alpha_k = psi(2n+k), delta = beta pi/2."""
    k = np.arange(n, 2 * n, dtype=float)
    Q = 4.0 / np.pi * float(np.sum(psi(2 * n + k) / (k + 1 - n)))
    delta = (float(beta) % 4.0) * np.pi / 2
    s = abs(math.sin(delta))
    if s > 1e-15:
        J = certified_terms(psi, 4 * n, eps_tail)
        kk = np.arange(2 * n, 2 * n + J, dtype=float)
        Q += 2.0 * s * float(np.sum(psi(2 * n + kk) / kk))
    return Q


def l1_norm_tail(spec):
    """(integral of |Psi_{n,beta}| over a period, Q_n)."""
    n = spec.n
    K = spec.psi_n_beta_terms
    coeffs = psi_values(spec.psi, 3 * n, K)
    top = n + K
    a = np.zeros(top)
    b = np.zeros(top)
    # cos(kt + phase) = cos(phase) cos kt - sin(phase) sin kt
    a[n:] = coeffs * math.cos(spec.phase)
    b[n:] = -coeffs * math.sin(spec.phase)
    norm = trig_l1_norm(a, b)
    return norm, telyakovskii_Q(spec.psi, n, spec.beta, spec.eps_tail)
