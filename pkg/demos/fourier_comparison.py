"""Best approximation against Fourier sums for the generalized Poisson
kernels. For r = 1 the ratio over the Lipschitz class approaches
pi / (2 K(e^-1)); for r = 2 the Fourier sums are asymptotically best."""

import math

from psiapprox.asymptotics import fourier_ratio, lipschitz_fourier_sup
from psiapprox.config import from_dict
from psiapprox.experiments import compare_row
from psiapprox.psi_functions import ParametricPsi


def main():
    for r in (1, 2):
        cfg = from_dict({"schema": 1, "n_list": [8, 16, 32], "psi": {"family": "poisson", "alpha": 1, "r": r}})
        for n in cfg.n_list:
            row = compare_row(cfg, n)
            print(f"r={r} n={n:>2}: E_n/fourier on f* = {row['ratio']:.4f}, "
                  f"class ratio = {row['class_ratio']:.4f}, limit = {row['limit']:.4f}")
    slow = ParametricPsi(0, 1, 0.5)
    for n in (8, 16, 32):
        ratio = 4 / math.pi / n / lipschitz_fourier_sup(slow, 0, n)
        print(f"r=1/2 n={n:>2}: class ratio = {ratio:.4f}, formula pi/((1-r) ln n) = {fourier_ratio(1, 0.5, n):.4f}")


if __name__ == "__main__":
    main()
