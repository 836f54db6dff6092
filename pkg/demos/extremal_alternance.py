"""The extremal functions for the Lipschitz modulus: Phi*_n alternates at
the 2n points zeta_k and the L1 version vanishes at the nodes x_i."""

from psiapprox.extremal import (
    alternance_report, build_L1, build_uniform, count_sign_changes, phi_star_transform, zero_pattern_report,
)
from psiapprox.kernels import KernelSpec
from psiapprox.modulus import PowerModulus
from psiapprox.psi_functions import ParametricPsi, ScaledPsi

LIP = PowerModulus(1, 1)
EXP = ParametricPsi(0, 1, 1)


def main():
    for n in (4, 8):
        psi = ScaledPsi(EXP, n)
        ext = build_uniform(LIP, n)
        rep = alternance_report(ext, phi_star_transform(ext, psi))
        predicted = ext.predicted_extreme(KernelSpec(psi, 0.0, n))
        print(f"n={n} uniform: level {rep['level']:.12f} (predicted {predicted:.12f}), "
              f"spread {rep['spread']:.1e}, alternating {rep['alternating']}")
        ext = build_L1(LIP, n)
        Phi = phi_star_transform(ext, psi, N=2**14)
        rep = zero_pattern_report(ext, Phi)
        print(f"n={n} L1: max |Phi(x_i)| / sup = {rep['max_at_nodes'] / rep['sup']:.1e}, "
              f"sign changes {count_sign_changes(Phi.samples)}, L1 norm {Phi.l1_norm():.12f}")


if __name__ == "__main__":
    main()
