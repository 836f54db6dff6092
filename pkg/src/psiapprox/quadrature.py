"""Small quadrature helpers shared by the numerical modules."""

import numpy as np


def adaptive_simpson(func, a, b, tol=1e-10, max_depth=60):
    """Integrate a scalar function on [a, b] by adaptive Simpson bisection.

    Uses the classical |S2 - S1| <= 15 tol acceptance test with Richardson
    correction. ``func`` is called on scalars.
    """
    if a == b:
        return 0.0
    fa, fm, fb = func(a), func(0.5 * (a + b)), func(b)
    whole = (b - a) * (fa + 4 * fm + fb) / 6
    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = func(lm), func(rm)
        left = (mid - lo) * (flo + 4 * flm + fmid) / 6
        right = (hi - mid) * (fmid + 4 * frm + fhi) / 6
        delta = left + right - s
        if depth >= max_depth or abs(delta) <= 15 * eps:
            total += left + right + delta / 15
        else:
            stack.append((lo, mid, flo, flm, fmid, left, eps / 2, depth + 1))
            stack.append((mid, hi, fmid, frm, fhi, right, eps / 2, depth + 1))
    return total


_GL_CACHE = {}


def gauss_legendre(order):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def panel_nodes(edges, order=16):
    """Gauss-Legendre nodes and weights on consecutive panels [e_i, e_{i+1}]."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + hi) / 2 + half * x[None, :]
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def refine_edges(edges, max_width):
    """Split every panel so that none is wider than max_width."""
    edges = np.asarray(edges, dtype=float)
    out = [edges[:1]]
    for lo, hi in zip(edges[:-1], edges[1:]):
        pieces = max(1, int(np.ceil((hi - lo) / max_width)))
        out.append(np.linspace(lo, hi, pieces + 1)[1:])
    return np.concatenate(out)
