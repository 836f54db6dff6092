"""Best approximation by trigonometric polynomials of degree <= n-1 in C
and L1, and the Jackson bound."""

from dataclasses import dataclass, field

import numpy as np

from .fourier import PeriodicFunction, grid, trig_l1_norm

TWO_PI = 2.0 * np.pi


@dataclass
class ApproxResult:
    value: float
    poly: PeriodicFunction
    lower: float
    upper: float
    iterations: int = 0
    converged: bool = True
    certificate: str = ""
    diagnostics: dict = field(default_factory=dict)


def _basis(x, n):
    k = np.arange(1, n, dtype=float)
    kx = np.outer(x, k)
    return np.hstack([np.ones((x.size, 1)), np.cos(kx), np.sin(kx)])


def _poly_from_coeffs(c, n, N):
    a = np.zeros(n)
    b = np.zeros(n)
    a[0] = 2.0 * c[0]
    a[1:] = c[1:n]
    b[1:] = c[n:]
    return PeriodicFunction(a, b, N)


def _alternating_extrema(r):
    """One index per maximal run of constant sign, at the run's largest |r|.

    The runs are taken cyclically; the result alternates in sign.
    """
    s = np.sign(r)
    nz = np.nonzero(s)[0]
    if nz.size == 0:
        return np.array([], dtype=int)
    # start at a sign change so no run wraps around the end
    change = np.nonzero(s[nz] != np.roll(s[nz], 1))[0]
    if change.size == 0:
        return np.array([nz[np.argmax(np.abs(r[nz]))]])
    order = np.roll(nz, -change[0])
    signs = s[order]
    cuts = np.nonzero(signs[1:] != signs[:-1])[0] + 1
    picks = [seg[np.argmax(np.abs(r[seg]))] for seg in np.split(order, cuts)]
    return np.array(picks)


def _merge_same_sign(idx, r):
    """Sort cyclically and keep the larger |r| among neighbours of equal sign."""
    idx = np.unique(idx)
    out = []
    for i in idx:
        if out and np.sign(r[out[-1]]) == np.sign(r[i]):
            if abs(r[i]) > abs(r[out[-1]]):
                out[-1] = i
        else:
            out.append(i)
    while len(out) > 1 and np.sign(r[out[0]]) == np.sign(r[out[-1]]):
        if abs(r[out[0]]) >= abs(r[out[-1]]):
            out.pop()
        else:
            out.pop(0)
    return out


def _reduce(points, r, size):
    """Drop adjacent pairs with the smallest |r| until ``size`` points remain."""
    points = list(points)
    top = points[int(np.argmax(np.abs(r[points])))]
    while len(points) > size:
        m = len(points)
        mags = np.abs(r[points])
        order = np.argsort(mags)
        for i in order:
            if points[i] != top:
                break
        left, right = (i - 1) % m, (i + 1) % m
        j = left if (mags[left] <= mags[right] and points[left] != top) or points[right] == top else right
        for k in sorted({i, j}, reverse=True):
            points.pop(k)
    return points


def _exchange(r, ref, size):
    cand = np.concatenate([np.asarray(ref, dtype=int), _alternating_extrema(r), [int(np.argmax(np.abs(r)))]])
    pts = _merge_same_sign(cand, r)
    if len(pts) < size:
        return None
    return np.array(sorted(_reduce(pts, r, size)))


def _level(x, g, n):
    """Solve B c + (-1)^j E = g on the 2n reference points."""
    B = _basis(x, n)
    sig = (-1.0) ** np.arange(x.size)
    sol = np.linalg.solve(np.hstack([B, sig[:, None]]), g)
    return sol[:-1], sol[-1]


def _polish(tail, c, x, n, iterations=12):
    """Continuous Remez steps: move references to local extrema by Newton."""
    a_p = _poly_from_coeffs(c, n, tail.N)
    E = None
    for _ in range(iterations):
        res = tail - a_p
        d1 = res.derivative()
        d2 = d1.derivative()
        for _ in range(4):
            num, den = d1(x), d2(x)
            step = np.where(den != 0, num / np.where(den == 0, 1.0, den), 0.0)
            x = x - np.clip(step, -np.pi / (8 * n), np.pi / (8 * n))
        x = np.sort(np.mod(x, TWO_PI))
        vals = res(x)
        if np.any(np.sign(vals) == np.sign(np.roll(vals, -1))):
            break
        c_new, E_new = _level(x, tail(x), n)
        a_p = _poly_from_coeffs(c_new, n, tail.N)
        c = c_new
        if E is not None and abs(abs(E_new) - abs(E)) <= 1e-15 * abs(E_new):
            E = E_new
            break
        E = E_new
    return c, x


def best_uniform(f, n, N=None, max_iter=200, tol=1e-6, polish=True):
    """E_n(f)_C by exchange iterations on a dense grid.

    The Fourier sum of degree n-1 is removed first (it does not change the
    best approximation error) and the remainder is scaled to unit size, so
    the solver works at full relative precision even when the tail of f is
    tiny compared with f. ``lower`` is the levelled reference error, a lower
    bound by de la Vallee Poussin; ``upper`` is the largest residual found.
    """
    low = f.partial_sum(n)
    tail = f.tail(n)
    if tail.is_zero():
        return ApproxResult(0.0, low, 0.0, 0.0, certificate="degree below n")
    N = N or max(32 * n, f.N)
    N += (-N) % (2 * n)
    x = grid(N)
    g = tail.samples_at(N)
    scale = np.max(np.abs(g))
    if scale == 0:
        return ApproxResult(0.0, low, 0.0, 0.0, certificate="vanishes on grid")
    g = g / scale
    tail_s = tail * (1.0 / scale)
    size = 2 * n
    ref = _exchange(g, [], size)
    if ref is None:
        ref = np.rint(np.arange(size) * N / size).astype(int) + int(np.argmax(np.abs(g))) % (N // size)
    c = np.zeros(2 * n - 1)
    converged = False
    it = 0
    B_grid = None
    for it in range(1, max_iter + 1):
        c, E = _level(x[ref], g[ref], n)
        if B_grid is None:
            B_grid = _basis(x, n)
        r = g - B_grid @ c
        upper, lower = np.max(np.abs(r)), abs(E)
        if upper - lower <= tol * upper:
            converged = True
            break
        new = _exchange(r, ref, size)
        if new is None or np.array_equal(new, ref):
            break
        ref = new
    ref_x = x[ref]
    if polish:
        c, ref_x = _polish(tail_s, c, ref_x.copy(), n)
    p = _poly_from_coeffs(c, n, tail.N)
    res = tail_s - p
    vals = res(ref_x)
    lower = float(np.min(np.abs(vals))) if np.all(np.sign(vals) != np.sign(np.roll(vals, -1))) else abs(E)
    upper = max(res.sup_norm(N), float(np.max(np.abs(vals))))
    value = upper
    signs = np.sign(vals)
    alternations = int(np.sum(signs != np.roll(signs, -1)))
    diag = {
        "reference": ref_x,
        "reference_values": vals * scale,
        "alternations": alternations,
        "grid_size": N,
        "gap": (upper - lower) / upper if upper else 0.0,
    }
    poly = low + p * scale
    cert = "alternance" if converged and alternations >= size else ""
    return ApproxResult(value * scale, poly, lower * scale, upper * scale, it, converged, cert, diag)


def sign_dual(g, n):
    """Dual function D(x0) = integral of g(x) sgn sin(n(x - x0)) dx.

    The sign function is orthogonal to every polynomial of degree <= n-1,
    so |D(x0)| <= E_n(g)_L1 for all x0. Only harmonics jn with j odd
    contribute: sgn sin(u) = sum_{j odd} 4/(pi j) sin(j u).
    """
    M = g.M
    a = np.zeros(M + 1)
    b = np.zeros(M + 1)
    for m in range(n, M + 1, 2 * n):
        j = m // n
        a[m] = 4.0 * g.b[m] / j
        b[m] = -4.0 * g.a[m] / j
    return PeriodicFunction(a, b, g.N)


def _argmax_abs(D, n):
    """x0 in [0, pi/n) maximizing |D|, by grid search and Newton polishing."""
    if D.is_zero():
        return 0.0, 0.0
    N = max(4096, 16 * D.M)
    N += (-N) % (2 * n)
    x = grid(N)
    v = np.abs(D.samples_at(N))
    x0 = x[int(np.argmax(v))]
    d1 = D.derivative()
    d2 = d1.derivative()
    for _ in range(8):
        den = float(d2(x0))
        if den == 0:
            break
        x0 -= float(np.clip(float(d1(x0)) / den, -TWO_PI / N, TWO_PI / N))
    x0 = float(np.mod(x0, np.pi / n))
    return x0, abs(float(D(x0)))


def zero_pattern(f, n, tol=1e-7):
    """Does f vanish exactly at 2n points x0 + i pi/n and change sign only there?

    Then sgn f is orthogonal to all polynomials of degree <= n-1 and the
    zero polynomial is a best L1 approximation of f.
    """
    z = f.zeros()
    details = {"sign_changes": int(z.size)}
    if z.size != 2 * n:
        return False, details
    step = np.pi / n
    # circular mean of the zeros modulo pi/n
    ang = np.angle(np.mean(np.exp(2j * n * z)))
    x0 = float(np.mod(ang / (2 * n), step))
    pts = x0 + np.arange(2 * n) * step
    sup = f.sup_norm()
    at_nodes = float(np.max(np.abs(f(pts))))
    details.update(x0=x0, max_at_nodes=at_nodes, sup=sup)
    return at_nodes <= tol * sup, details


def sign_pattern_certificate(tail, n, x0=None, tol=1e-7):
    """Look for p of degree <= n-1 such that tail - p changes sign exactly at x0 + i pi/n.

    x0 maximizes the sign dual, p interpolates the tail at those 2n points
    (least squares; the system is consistent at the dual optimum). When the
    residual has exactly 2n zeros, all at the nodes, p is a best L1
    approximation and the norm of the residual equals the dual bound.
    Returns (ok, p, details).
    """
    D = sign_dual(tail, n)
    if x0 is None:
        x0, lower = _argmax_abs(D, n)
    else:
        lower = abs(float(D(x0)))
    pts = x0 + np.arange(2 * n) * np.pi / n
    c, *_ = np.linalg.lstsq(_basis(pts, n), tail(pts), rcond=None)
    p = _poly_from_coeffs(c, n, tail.N)
    r = tail - p
    sup = r.sup_norm()
    z = r.zeros()
    at_nodes = float(np.max(np.abs(r(pts))))
    value = r.l1_norm()
    ok = z.size == 2 * n and at_nodes <= tol * sup and abs(value - lower) <= tol * value
    details = {"x0": x0, "lower": lower, "value": value, "sign_changes": int(z.size),
               "max_at_nodes": at_nodes, "sup": sup}
    return ok, p, details


def _lp_l1(g, x, n):
    from scipy.optimize import linprog

    N = x.size
    B = _basis(x, n)
    m = B.shape[1]
    w = np.full(N, TWO_PI / N)
    cost = np.concatenate([np.zeros(m), w, w])
    from scipy.sparse import hstack as sp_hstack, identity, csr_matrix

    A_eq = sp_hstack([csr_matrix(B), identity(N), -identity(N)]).tocsr()
    bounds = [(None, None)] * m + [(0, None)] * (2 * N)
    res = linprog(cost, A_eq=A_eq, b_eq=g, bounds=bounds, method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    return res


def best_L1(f, n, N=None, x0=None, use_certificate=True):
    """E_n(f)_L1.

    First tries the sign-pattern certificate on f minus its Fourier sum; if
    it holds the value is certified from both sides. Otherwise solves
    the discretized problem as a linear program and reports the exact L1
    norm of the resulting residual.
    """
    from .errors import ConvergenceError

    low = f.partial_sum(n)
    tail = f.tail(n)
    if tail.is_zero():
        return ApproxResult(0.0, low, 0.0, 0.0, certificate="degree below n")
    if use_certificate:
        ok, details = zero_pattern(f, n)
        if ok:
            value = f.l1_norm()
            zero = PeriodicFunction([0.0], N=f.N)
            return ApproxResult(value, zero, value, value, certificate="sign pattern", diagnostics=details)
        ok, p, details = sign_pattern_certificate(tail, n, x0)
        if ok:
            return ApproxResult(details["value"], low + p, details["lower"], details["value"],
                                certificate="sign pattern", diagnostics=details)
    N = N or min(4096, max(32 * n, f.N))
    N += (-N) % (2 * n)
    x = grid(N)
    g = tail.samples_at(N)
    scale = np.max(np.abs(g))
    res = _lp_l1(g / scale, x, n)
    if res.status != 0:
        raise ConvergenceError(f"L1 linear program failed: {res.message}")
    c = res.x[: 2 * n - 1]
    p = _poly_from_coeffs(c, n, tail.N) * scale
    resid = tail - p
    value = trig_l1_norm(resid.a, resid.b)
    return ApproxResult(value, low + p, float(res.fun * scale), value, certificate="linear program",
                        diagnostics={"lp_objective": float(res.fun * scale), "grid_size": N})


def modulus_of_continuity(phi, delta, space="C", N=None):
    """sup over grid shifts |h| <= delta of ||phi(. + h) - phi||_X."""
    N = N or max(phi.N, 4096)
    v = phi.samples_at(N)
    h = TWO_PI / N
    worst = 0.0
    for j in range(1, int(np.floor(delta / h + 1e-9)) + 1):
        d = np.roll(v, -j) - v
        worst = max(worst, np.max(np.abs(d)) if space == "C" else np.sum(np.abs(d)) * h)
    return float(worst)


def jackson_bound(phi, n, space="C", N=None):
    """(3/2) omega(phi, pi/n)_X, an upper bound for E_n(phi)_X."""
    if space not in ("C", "L1"):
        raise ValueError("space must be 'C' or 'L1'")
    return 1.5 * modulus_of_continuity(phi, np.pi / n, space, N)
