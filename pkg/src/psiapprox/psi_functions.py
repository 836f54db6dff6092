"""Generators psi(t), t >= 1, of the convolution classes and their
characteristics eta, mu and alpha.

Everything is evaluated through ``log psi`` where possible so that rapidly
decaying generators such as exp(-t**2) stay usable far beyond the point
where psi itself underflows.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError, PreconditionError

LN2 = math.log(2.0)


class PsiFunction:
    """A positive decreasing convex function on [1, inf) tending to zero.

    Subclasses override ``log`` and ``dlog`` (the logarithmic derivative
    psi'/psi) when closed forms exist. The generic version wraps a callable
    and differentiates it by central differences.
    """

    def __init__(self, func=None, deriv=None, name="psi"):
        self._func = func
        self._deriv = deriv
        self.name = name

    def __call__(self, t):
        if self._func is not None:
            return self._func(np.asarray(t, dtype=float) if np.ndim(t) else float(t))
        return np.exp(self.log(t))

    def log(self, t):
        with np.errstate(divide="ignore"):
            return np.log(self(t))

    def deriv(self, t):
        """Right derivative psi'(t+0)."""
        if self._deriv is not None:
            return self._deriv(t)
        t = np.asarray(t, dtype=float)
        h = np.maximum(1e-6, 1e-6 * t)
        d = (self(t + h) - self(t - h)) / (2 * h)
        return d if d.ndim else float(d)

    def dlog(self, t):
        """psi'(t)/psi(t)."""
        return self.deriv(t) / self(t)

    def inverse(self, y, lo=1.0):
        """psi^{-1}(y) for y in (0, psi(lo)]."""
        return self.inverse_log(math.log(y), lo=lo)

    def inverse_log(self, logy, lo=1.0, cap_max=1e15):
        """Solve log psi(s) = logy for s >= lo by bisection."""
        if self.log(lo) < logy:
            raise DomainError(f"value exp({logy}) exceeds psi({lo})")
        hi = max(2.0 * lo, lo + 1.0)
        while self.log(hi) >= logy:
            lo, hi = hi, 2.0 * hi
            if hi > cap_max:
                raise DomainError(f"psi does not fall below exp({logy}) before t={cap_max:g}")
        # bisect to full float resolution
        while True:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self.log(mid) >= logy:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class ParametricPsi(PsiFunction):
    """psi(t) = t**(-delta) * exp(-alpha * t**r)."""

    def __init__(self, delta=0.0, alpha=1.0, r=1.0):
        if delta < 0 or alpha < 0 or r <= 0 or (alpha == 0 and delta == 0):
            raise ValueError("need delta >= 0, alpha >= 0, r > 0 and a decaying psi")
        self.delta = float(delta)
        self.alpha = float(alpha)
        self.r = float(r)
        super().__init__(name=f"t^-{delta:g} exp(-{alpha:g} t^{r:g})")

    def __call__(self, t):
        return np.exp(self.log(t))

    def log(self, t):
        t = np.asarray(t, dtype=float)
        out = -self.delta * np.log(t) - self.alpha * t**self.r
        return out if out.ndim else float(out)

    def dlog(self, t):
        t = np.asarray(t, dtype=float)
        out = -(self.delta / t + self.alpha * self.r * t ** (self.r - 1.0))
        return out if out.ndim else float(out)

    def deriv(self, t):
        return self.dlog(t) * self(t)

    def __reduce__(self):
        return (ParametricPsi, (self.delta, self.alpha, self.r))


def exponential_psi(base=2.0):
    """psi(t) = base**(-t)."""
    return ParametricPsi(0.0, math.log(base), 1.0)


def power_psi(delta):
    """psi(t) = t**(-delta); a member of S+ but not of M_inf+."""
    return ParametricPsi(delta, 0.0, 1.0)


class ProductPsi(PsiFunction):
    """Pointwise product psi1 * psi2; derivative by the product rule."""

    def __init__(self, psi1, psi2):
        self.psi1, self.psi2 = psi1, psi2
        super().__init__(name=f"({psi1.name})*({psi2.name})")

    def __call__(self, t):
        return self.psi1(t) * self.psi2(t)

    def log(self, t):
        return self.psi1.log(t) + self.psi2.log(t)

    def deriv(self, t):
        return self.psi1.deriv(t) * self.psi2(t) + self.psi1(t) * self.psi2.deriv(t)

    def dlog(self, t):
        return self.psi1.dlog(t) + self.psi2.dlog(t)


class ScaledPsi(PsiFunction):
    """psi(t)/psi(s) for a fixed reference point s.

    eta, mu and alpha are invariant under positive scaling, so a scaled
    generator gives the same characteristics while keeping values near 1
    around t = s.
    """

    def __init__(self, psi, s):
        self.base = psi
        self.s = float(s)
        self._log_s = psi.log(self.s)
        super().__init__(name=f"{psi.name}/psi({s:g})")

    def __call__(self, t):
        return np.exp(self.log(t))

    def log(self, t):
        return self.base.log(t) - self._log_s

    def dlog(self, t):
        return self.base.dlog(t)

    def deriv(self, t):
        return self.dlog(t) * self(t)


def _scalar_or_map(func, t):
    if np.ndim(t) == 0:
        return func(float(t))
    return np.array([func(float(s)) for s in np.ravel(t)]).reshape(np.shape(t))


def eta(psi, t):
    """Half-value point: psi(eta(t)) = psi(t)/2."""
    return _scalar_or_map(lambda s: psi.inverse_log(psi.log(s) - LN2, lo=s), t)


def mu(psi, t):
    """mu(t) = t / (eta(t) - t)."""
    return _scalar_or_map(lambda s: s / (eta(psi, s) - s), t)


def mu_poisson_closed_form(alpha, r, t):
    """mu for psi = exp(-alpha t^r): ((1 + ln2/(alpha t^r))^(1/r) - 1)^(-1)."""
    t = np.asarray(t, dtype=float)
    x = LN2 / (alpha * t**r)
    out = 1.0 / np.expm1(np.log1p(x) / r)
    return out if out.ndim else float(out)


def alpha_char(psi, t):
    """alpha(t) = psi(t) / (t |psi'(t+0)|)."""
    def one(s):
        value = psi(s)
        if value > 0 and np.isfinite(value):
            d = psi.deriv(s)
            if d == 0:
                raise ZeroDivisionError(f"psi'({s}) vanishes")
            return value / (s * abs(d))
        d = psi.dlog(s)
        if d == 0:
            raise ZeroDivisionError(f"psi'({s}) vanishes")
        return 1.0 / (s * abs(d))
    return _scalar_or_map(one, t)


def default_grid(points=64, upper=1e4):
    return np.geomspace(1.0, upper, points)


@dataclass
class MembershipReport:
    which: str
    monotone: bool
    growth: bool
    first: float
    last: float
    values: np.ndarray = field(repr=False)

    @property
    def passed(self):
        if self.which == "S+":
            return self.monotone
        return self.monotone and self.growth


_MEMBERSHIP_SETS = ("M_inf+", "S+", "S_inf+")


def check_membership(psi, grid=None, which="M_inf+", growth_factor=10.0, tol=1e-9):
    """Sampled evidence that psi lies in M_inf+, S+ or S_inf+.

    M_inf+ asks for mu increasing without bound, S+ for 1/alpha
    nondecreasing and S_inf+ for 1/alpha increasing without bound.
    "Without bound" is read as growth by ``growth_factor`` over the grid.
    """
    if which not in _MEMBERSHIP_SETS:
        raise ValueError(f"which must be one of {_MEMBERSHIP_SETS}")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 16:
        raise ValueError("membership grid needs at least 16 points")
    if np.any(np.diff(grid) <= 0) or grid[0] < 1.0 or grid[-1] < 1e3:
        raise ValueError("membership grid must increase strictly and span [1, 1e3]")
    if which == "M_inf+":
        values = mu(psi, grid)
    else:
        values = 1.0 / alpha_char(psi, grid)
    steps = np.diff(values)
    monotone = bool(np.all(steps >= -tol * np.abs(values[1:])))
    growth = bool(values[-1] >= growth_factor * values[0])
    return MembershipReport(which, monotone, growth, float(values[0]), float(values[-1]), values)


def prop1_eta_order(psi1, psi2, t, grid_points=256, tol=1e-12):
    """Check eta(psi1; t) <= eta(psi2; t) when psi2/psi1 is nondecreasing.

    The ratio is sampled on [1, eta(psi2; t)], which is the range the
    argument actually uses. Returns (eta1, eta2, verdict).
    """
    e1 = eta(psi1, t)
    e2 = eta(psi2, t)
    upper = max(e1, e2, t + 1.0)
    s = np.linspace(1.0, upper, grid_points)
    log_ratio = psi2.log(s) - psi1.log(s)
    if np.any(np.diff(log_ratio) < -tol * (1.0 + np.abs(log_ratio[1:]))):
        raise PreconditionError("psi2/psi1 decreases on the sampled grid")
    return e1, e2, bool(e1 <= e2 * (1 + 1e-12))


def prop2_alpha_additivity(psi1, psi2, t):
    """Relative residual of 1/alpha(psi1 psi2) = 1/alpha(psi1) + 1/alpha(psi2)."""
    lhs = 1.0 / alpha_char(ProductPsi(psi1, psi2), t)
    rhs = 1.0 / alpha_char(psi1, t) + 1.0 / alpha_char(psi2, t)
    return abs(lhs - rhs) / abs(lhs)


def decay_margin(psi, t):
    """-2 psi'(t) (eta(t) - t) / psi(t); at least 1 for members of M_inf+."""
    return _scalar_or_map(lambda s: -2.0 * psi.dlog(s) * (eta(psi, s) - s), t)
