"""Main terms and remainder scales of the asymptotic formulas for E_n, the
Poisson-class corollary, and the Fourier-sum comparison ratios."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .modulus import e_n, is_convex_upward
from .psi_functions import eta, mu

SPACES = ("C", "L1", "Lp")


@dataclass
class EstimateReport:
    n: int
    space: str
    main_term: float
    theta_bracket: tuple
    remainder_scale: float
    upper_bound_only: bool = False

    @property
    def interval(self):
        """Range of the main term allowed by the theta bracket."""
        lo, hi = self.theta_bracket
        return lo * self.main_term, hi * self.main_term


def gamma_n(psi, n):
    """Remainder scale gamma_n(psi); requires mu(n) > 2."""
    m = mu(psi, n)
    if not m > 2:
        raise DomainError(f"mu({n}) = {m:.6g} must exceed 2")
    lnp = max(0.0, math.log(eta(psi, n) - n)) if eta(psi, n) - n > 0 else 0.0
    return float(psi(n + 1) * (1.0 / n + 1.0 / (m - 2.0)) + psi(3 * n) * (1.0 + lnp))


def gamma_ratio(psi, n):
    """gamma_n(psi) / psi(n), computed without underflow."""
    m = mu(psi, n)
    if not m > 2:
        raise DomainError(f"mu({n}) = {m:.6g} must exceed 2")
    d = eta(psi, n) - n
    lnp = math.log(d) if d > 1 else 0.0
    r1 = math.exp(psi.log(n + 1) - psi.log(n))
    r3 = math.exp(psi.log(3 * n) - psi.log(n))
    return r1 * (1.0 / n + 1.0 / (m - 2.0)) + r3 * (1.0 + lnp)


def theorem1_estimate(psi, omega, n, space="C"):
    """Main term (2/pi) psi(n) e_n(omega), theta bracket and remainder scale."""
    if space not in SPACES:
        raise ValueError(f"space must be one of {SPACES}")
    g = gamma_n(psi, n)
    en = e_n(omega, n)
    main = 2.0 / math.pi * float(psi(n)) * en
    if space == "Lp" or en == 0 or is_convex_upward(omega):
        bracket = (1.0, 1.0)
    else:
        bracket = (2.0 / 3.0, 1.0) if space == "C" else (0.5, 1.0)
    return EstimateReport(n, space, main, bracket, g * float(omega(1.0 / n)), upper_bound_only=space == "Lp")


def corollary_gamma(alpha, r, n):
    """gamma_n(alpha, r) for psi(t) = exp(-alpha t^r)."""
    if alpha <= 0 or r <= 0:
        raise ValueError("alpha and r must be positive")
    if r < 1:
        return 1.0 / (r * alpha * n**r)
    if r == 1:
        return (1.0 + 1.0 / alpha) * math.exp(-alpha) / n
    return math.exp(-alpha * r * n ** (r - 1)) / n


@dataclass
class TrendReport:
    n: list
    values: list
    decreasing: bool
    verdict: str


def condition_12prime(psi, n_list):
    """psi(3n)/psi(n) * (1 + ln+(eta(n) - n)) along n_list."""
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    vals = []
    for n in n_list:
        d = eta(psi, n) - n
        vals.append(math.exp(psi.log(3 * n) - psi.log(n)) * (1.0 + (math.log(d) if d > 1 else 0.0)))
    dec = all(b < a for a, b in zip(vals, vals[1:]))
    small = bool(vals) and vals[-1] < 0.1 * vals[0] if len(vals) > 1 else False
    verdict = "decreasing toward 0" if dec and small else "not decreasing toward 0"
    return TrendReport(n_list, vals, dec, verdict)


def elliptic_K(q):
    """Complete elliptic integral of the first kind with modulus q, by AGM."""
    if not 0 <= q < 1:
        raise DomainError("elliptic_K needs 0 <= q < 1")
    a, b = 1.0, math.sqrt((1.0 - q) * (1.0 + q))
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def fourier_ratio(alpha, r, n=None):
    """Limit of E_n / ||f - S_{n-1} f|| for the Poisson classes."""
    if alpha <= 0 or r <= 0:
        raise ValueError("alpha and r must be positive")
    if r < 1:
        if n is None or n <= 1:
            raise DomainError("n > 1 is required when r < 1")
        return math.pi / ((1.0 - r) * math.log(n))
    if r == 1:
        return math.pi / (2.0 * elliptic_K(math.exp(-alpha)))
    return 1.0


def lipschitz_fourier_sup(psi, beta, n, K=1.0, terms=None, resolution=None):
    """sup over phi in K*Lip 1 of ||f - S_{n-1} f||_C.

    With T(t) = sum_{k>=n} psi(k) cos(k t - beta pi/2), the deviation is
    (1/pi) int phi'(x - t) T1(t) dt with T1' = T, so the supremum equals
    (K/pi) min_c ||T1 - c||_L1, attained at the median of T1.
    Values are returned relative to psi(n).
    """
    from .fourier import grid
    from .kernels import certified_terms
    from .psi_functions import ScaledPsi

    sp = ScaledPsi(psi, n)
    J = terms or certified_terms(sp, n, 1e-14)
    k = np.arange(n, n + J, dtype=float)
    th = beta * math.pi / 2
    c = sp(k) / k
    N = resolution or max(4096, 16 * (n + J))
    x = grid(N)
    # T1(t) = sum psi(k)/k sin(k t - theta)
    T1 = np.zeros(N)
    for lo in range(0, k.size, 256):
        kk = k[lo:lo + 256]
        T1 += np.sin(np.outer(x, kk) - th) @ c[lo:lo + 256]
    med = np.median(T1)
    # refine the L1 norm with the exact zeros of T1 - med
    from .fourier import trig_l1_norm

    M = int(k[-1])
    a = np.zeros(M + 1)
    b = np.zeros(M + 1)
    a[k.astype(int)] = -c * math.sin(th)
    b[k.astype(int)] = c * math.cos(th)
    a[0] = -2.0 * med
    return K / math.pi * trig_l1_norm(a, b)
