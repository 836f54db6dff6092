"""Per-n work items behind the command line: verification of the
asymptotic formulas on the extremal functions and the Fourier-sum
comparison."""

import math

import numpy as np

from .asymptotics import fourier_ratio, gamma_ratio, lipschitz_fourier_sup, theorem1_estimate
from .best_approx import best_L1, best_uniform
from .extremal import build_L1, build_uniform, phi_star_transform, two_thirds_scaling
from .fourier import convolve
from .kernels import KernelSpec
from .modulus import e_n, is_convex_upward
from .psi_functions import ParametricPsi, ScaledPsi

VERIFY_COLUMNS = ["n", "space", "E_n", "main_term", "gamma_scale", "normalized_dev", "remez_iters", "certificate"]
COMPARE_COLUMNS = ["n", "E_n", "fourier_dev", "ratio", "class_ratio", "limit"]


def extremal_function(psi, omega, beta, n, space, grid):
    """The extremal f* with psi rescaled by psi(n), without harmonics below n.

    Dropping the low harmonics leaves E_n unchanged and keeps psi(k) away
    from overflow after rescaling.
    """
    spec = KernelSpec(ScaledPsi(psi, n), beta, n)
    if space == "C":
        ext = build_uniform(omega, n, beta)
        if not is_convex_upward(omega):
            ext = two_thirds_scaling(ext)
    else:
        ext = build_L1(omega, n, beta)
    phi = ext.function(N=grid["N"], M=grid["M"])
    return convolve(phi, spec, kmin=n), ext, spec


def verify_row(cfg, n, space):
    """One row of the verification table; values in absolute units."""
    psi, omega = cfg.make_psi(), cfg.make_omega()
    tol = cfg.tolerances
    f, _, _ = extremal_function(psi, omega, cfg.beta, n, space, cfg.grid)
    if space == "C":
        res = best_uniform(f, n, tol=tol["remez"])
    else:
        res = best_L1(f, n)
    psin = float(psi(n))
    report = theorem1_estimate(psi, omega, n, "C" if space == "C" else "L1")
    main_scaled = 2.0 / math.pi * e_n(omega, n)
    gamma_scaled = gamma_ratio(psi, n) * float(omega(1.0 / n))
    dev = abs(res.value - main_scaled) / gamma_scaled if gamma_scaled > 0 else float("nan")
    return {
        "n": n,
        "space": space,
        "E_n": res.value * psin,
        "main_term": report.main_term,
        "gamma_scale": report.remainder_scale,
        "normalized_dev": dev,
        "remez_iters": res.iterations,
        "certificate": res.certificate or ("unconverged" if not res.converged else "none"),
    }


def compare_row(cfg, n):
    """E_n(f*)_C against the Fourier-sum deviation of the same f*."""
    psi, omega = cfg.make_psi(), cfg.make_omega()
    if not isinstance(psi, ParametricPsi) or psi.delta != 0:
        raise ValueError("compare-fourier needs a poisson psi with delta = 0")
    f, _, _ = extremal_function(psi, omega, cfg.beta, n, "C", cfg.grid)
    psin = float(psi(n))
    res = best_uniform(f, n, tol=cfg.tolerances["remez"])
    fourier_dev = f.tail(n).sup_norm()
    ratio = res.value / fourier_dev if fourier_dev > 0 else float("nan")
    class_ratio = float("nan")
    if getattr(omega, "gamma", None) == 1.0 and omega.K > 0:
        sup = lipschitz_fourier_sup(psi, cfg.beta, n, omega.K)
        class_ratio = 2.0 / math.pi * e_n(omega, n) / sup
    try:
        limit = fourier_ratio(psi.alpha, psi.r, n)
    except ValueError:
        limit = float("nan")
    return {
        "n": n,
        "E_n": res.value * psin,
        "fourier_dev": fourier_dev * psin,
        "ratio": ratio,
        "class_ratio": class_ratio,
        "limit": limit,
    }


def extremal_rows(cfg, n, space):
    """Samples of phi* and Phi*_n on the aligned grid."""
    psi, omega = cfg.make_psi(), cfg.make_omega()
    ext = build_uniform(omega, n, cfg.beta) if space == "C" else build_L1(omega, n, cfg.beta)
    Phi = phi_star_transform(ext, ScaledPsi(psi, n), N=cfg.grid["N"])
    x = Phi.grid
    phi = ext(x)
    values = Phi.samples * float(psi(n))
    return [{"n": n, "x": float(xi), "phi_star": float(p), "Phi_star": float(v)}
            for xi, p, v in zip(x, phi, values)]


def kernel_rows(cfg, n, points=512):
    from .kernels import kernel_Psi_n, kernel_Psi_n_beta, psi_beta_kernel

    psi = cfg.make_psi()
    spec = KernelSpec(ScaledPsi(psi, n), cfg.beta, n)
    t = np.linspace(0.0, 2 * np.pi, points, endpoint=False)
    psin = float(psi(n))
    base = KernelSpec(psi, cfg.beta, n)
    cols = (psi_beta_kernel(base, t), kernel_Psi_n(spec, t) * psin, kernel_Psi_n_beta(spec, t) * psin)
    return [{"n": n, "t": float(ti), "Psi_beta": float(a), "Psi_n": float(b), "Psi_n_beta": float(c)}
            for ti, a, b, c in zip(t, *cols)]


def estimate_row(cfg, n):
    from .asymptotics import corollary_gamma, gamma_n

    psi, omega = cfg.make_psi(), cfg.make_omega()
    row = {"n": n}
    for space in ("C", "L1"):
        rep = theorem1_estimate(psi, omega, n, space)
        row[f"main_{space}"] = rep.main_term
        row[f"theta_lo_{space}"] = rep.theta_bracket[0]
    row["gamma_n"] = gamma_n(psi, n)
    row["remainder_scale"] = rep.remainder_scale
    if isinstance(psi, ParametricPsi) and psi.delta == 0:
        row["corollary_gamma"] = corollary_gamma(psi.alpha, psi.r, n)
    return row
