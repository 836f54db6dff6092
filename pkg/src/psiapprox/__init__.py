"""Best trigonometric approximation of convolution classes generated by
rapidly decreasing multipliers psi and a modulus of continuity omega."""

from .psi_functions import (
    PsiFunction,
    ParametricPsi,
    ProductPsi,
    ScaledPsi,
    eta,
    mu,
    mu_poisson_closed_form,
    alpha_char,
    check_membership,
    prop1_eta_order,
    prop2_alpha_additivity,
)
from .modulus import Modulus, PowerModulus, validate, is_convex_upward, least_concave_majorant, e_n
from .fourier import PeriodicFunction, analyze, convolve, psi_derivative, partial_sum
from .kernels import KernelSpec, NodeSystem
from .best_approx import ApproxResult, best_uniform, best_L1, jackson_bound
from .asymptotics import (
    EstimateReport,
    gamma_n,
    theorem1_estimate,
    corollary_gamma,
    condition_12prime,
    elliptic_K,
    fourier_ratio,
)

__version__ = "0.1.0"
