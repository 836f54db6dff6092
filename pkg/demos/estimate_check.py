"""Best approximations of the extremal function against the asymptotic main
term, in units of psi(n), with the remainder normalized by gamma_n omega(1/n)."""

from psiapprox.config import from_dict
from psiapprox.experiments import verify_row


def main():
    cfg = from_dict({"schema": 1, "n_list": [4, 8, 16, 32], "space": "both"})
    print(f"{'n':>3} {'space':>5} {'E_n':>14} {'main term':>14} {'normalized dev':>15} {'certificate':>13}")
    for n in cfg.n_list:
        for space in ("C", "L1"):
            row = verify_row(cfg, n, space)
            print(f"{n:>3} {space:>5} {row['E_n']:>14.6e} {row['main_term']:>14.6e} "
                  f"{row['normalized_dev']:>15.2e} {row['certificate']:>13}")


if __name__ == "__main__":
    main()
