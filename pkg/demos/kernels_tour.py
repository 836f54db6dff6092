"""Tour of the kernels: the mean of Psi_n, the Riemann-sum deviation at the
nodes and the L1 norm of the tail kernel against Q_n."""

from psiapprox.kernels import KernelSpec, kernel_mean, l1_norm_tail, lemma_scale, riemann_sum_deviation
from psiapprox.psi_functions import ParametricPsi, ScaledPsi, exponential_psi

FAMILIES = {"2^-t": exponential_psi(2.0), "e^-t": ParametricPsi(0, 1, 1), "e^-t^2": ParametricPsi(0, 1, 2)}


def main():
    print(f"{'psi':>7} {'n':>3} {'mean/psi(n)':>12} {'riemann C':>10} {'|norm-Q|/psi(3n)':>17}")
    for name, psi in FAMILIES.items():
        for n in (4, 8, 16):
            spec = KernelSpec(ScaledPsi(psi, n), 0.0, n)
            C = abs(riemann_sum_deviation(spec)) / lemma_scale(spec.psi, n)
            norm, Q = l1_norm_tail(KernelSpec(ScaledPsi(psi, 3 * n), 0.0, n))
            print(f"{name:>7} {n:>3} {kernel_mean(spec):>12.9f} {C:>10.2e} {abs(norm - Q):>17.3f}")


if __name__ == "__main__":
    main()
