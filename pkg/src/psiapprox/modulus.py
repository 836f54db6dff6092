"""Moduli of continuity: axioms, concavity, the concave majorant and the
main-term integral e_n(omega)."""

from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_simpson


class Modulus:
    """A modulus of continuity t -> omega(t), t >= 0.

    ``deriv`` defaults to finite differences (forward at the origin). Pass a
    closed form when omega has one; the L1 extremal function needs omega'.
    """

    def __init__(self, func, deriv=None, name="omega"):
        self._func = func
        self._deriv = deriv
        self.name = name

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.asarray(self._func(t), dtype=float)
        if out.shape != t.shape:
            out = np.broadcast_to(out, t.shape).copy()
        return out if out.ndim else float(out)

    def deriv(self, t):
        if self._deriv is not None:
            return self._deriv(np.asarray(t, dtype=float))
        t = np.asarray(t, dtype=float)
        h = np.maximum(1e-7, 1e-7 * t)
        back = np.maximum(t - h, 0.0)
        d = (self(t + h) - self(back)) / (t + h - back)
        return d if d.ndim else float(d)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class PowerModulus(Modulus):
    """omega(t) = K t**gamma, concave for 0 < gamma <= 1."""

    def __init__(self, K=1.0, gamma=1.0):
        if K < 0 or not 0 < gamma <= 1:
            raise ValueError("PowerModulus needs K >= 0 and 0 < gamma <= 1")
        self.K, self.gamma = float(K), float(gamma)
        super().__init__(self._eval, self._d, name=f"{K:g} t^{gamma:g}")

    def _eval(self, t):
        return self.K * np.power(t, self.gamma)

    def _d(self, t):
        if self.gamma == 1.0:
            out = np.full(np.shape(t), self.K)
        else:
            with np.errstate(divide="ignore"):
                out = self.K * self.gamma * np.power(t, self.gamma - 1.0)
        return out if np.ndim(out) else float(out)

    def __reduce__(self):
        return (PowerModulus, (self.K, self.gamma))


class PiecewiseLinearModulus(Modulus):
    """Linear interpolation through knots, continued with the last slope."""

    def __init__(self, knots, values, name="piecewise linear"):
        self.knots = np.asarray(knots, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self._slope = (self.values[-1] - self.values[-2]) / (self.knots[-1] - self.knots[-2])
        super().__init__(self._eval, name=name)

    def _eval(self, t):
        out = np.interp(t, self.knots, self.values)
        beyond = t > self.knots[-1]
        return np.where(beyond, self.values[-1] + self._slope * (t - self.knots[-1]), out)


def zero_modulus():
    return Modulus(lambda t: np.zeros_like(t), lambda t: np.zeros_like(t), name="0")


def default_grid(points=1024):
    return np.linspace(0.0, np.pi, points)


def _check_grid(grid):
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 32:
        raise ValueError("modulus grid needs at least 32 points")
    if grid[0] < 0 or grid[-1] > np.pi + 1e-12 or np.any(np.diff(grid) <= 0):
        raise ValueError("modulus grid must increase strictly inside [0, pi]")
    return grid


@dataclass
class ModulusReport:
    zero_at_origin: bool
    nondecreasing: bool
    semi_additive: bool
    worst_pair: tuple
    worst_excess: float

    @property
    def passed(self):
        return self.zero_at_origin and self.nondecreasing and self.semi_additive


def validate(omega, grid=None, tol=1e-12):
    """Check omega(0) = 0, monotonicity and semi-additivity on grid pairs."""
    grid = _check_grid(grid)
    values = omega(grid)
    zero = abs(omega(0.0)) <= tol
    monotone = bool(np.all(np.diff(values) >= -tol))
    sums = grid[:, None] + grid[None, :]
    excess = omega(sums) - (values[:, None] + values[None, :])
    i, j = np.unravel_index(np.argmax(excess), excess.shape)
    worst = float(excess[i, j])
    scale = tol * (1.0 + np.max(np.abs(values)))
    return ModulusReport(zero, monotone, worst <= scale, (float(grid[i]), float(grid[j])), worst)


def is_convex_upward(omega, grid=None, tol=1e-10):
    """True when omega is concave on the grid (second divided differences <= tol)."""
    grid = _check_grid(grid)
    v = omega(grid)
    slopes = np.diff(v) / np.diff(grid)
    second = np.diff(slopes) / (0.5 * (grid[2:] - grid[:-2]))
    scale = 1.0 + np.max(np.abs(slopes))
    return bool(np.all(second <= tol * scale / (grid[1] - grid[0])))


class SandwichError(ValueError):
    """The concave majorant is not below 2 omega."""


def upper_concave_hull(x, y):
    """Indices of the upper concave hull of points sorted by x."""
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull)


def least_concave_majorant(omega, grid=None):
    """Concave majorant omega* with omega <= omega* < 2 omega on the grid."""
    grid = _check_grid(grid)
    values = omega(grid)
    idx = upper_concave_hull(grid, values)
    major = PiecewiseLinearModulus(grid[idx], values[idx], name=f"concave majorant of {omega.name}")
    upper = major(grid)
    positive = grid > 0
    bad = positive & (upper >= 2 * values) & (upper > 0)
    if np.any(bad):
        t = grid[np.argmax(bad)]
        raise SandwichError(f"majorant reaches 2 omega at t={t:g}; omega is not a modulus")
    return major


def e_n(omega, n, tol=1e-10):
    """Integral of omega(2t/n) sin t over [0, pi/2]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return adaptive_simpson(lambda t: float(omega(2.0 * t / n)) * np.sin(t), 0.0, np.pi / 2, tol=tol)
