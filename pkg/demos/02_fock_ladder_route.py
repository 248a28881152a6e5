"""The same coincidence seen from the number basis.

In the truncated number basis the added and subtracted states are plain
ladder applications. For squeezed vacuum they are parallel vectors:
a|psi> = -tanh(z) * a^dag|psi>. The outcome_ratio helper measures both the
proportionality constant and how far from parallel the two vectors are.
"""

import math

from sqvac import (
    bogoliubov_annihilate,
    outcome_ratio,
    squeezed_vacuum,
    suggested_truncation,
)


def main():
    print("ladder route: a|psi> vs a^dag|psi> on squeezed vacuum")
    print(f"{'z':>6} {'N':>5} {'ratio':>14} {'-tanh z':>10} {'residual':>10}")
    for z in (0.1, math.log(2.0), 1.0):
        n = suggested_truncation(z)
        res = outcome_ratio(squeezed_vacuum(z, n))
        print(f"{z:6.3f} {n:5d} {res.ratio.real:14.9f} {-math.tanh(z):10.6f} "
              f"{res.residual:10.2e}")

    # the hyperbolic combination a cosh z - a^dag sinh z kills the partner
    # state outright -- and loudly fails to kill the oppositely squeezed one
    z = math.log(2.0)
    good = squeezed_vacuum(-z, suggested_truncation(z) + 8)
    bad = squeezed_vacuum(z, suggested_truncation(z) + 8)
    print()
    print(f"hyperbolic mix at z={z:.4f}:")
    print(f"  partner state leftover norm:  {bogoliubov_annihilate(z, good).norm():.2e}")
    print(f"  opposite squeezing leftover:  {bogoliubov_annihilate(z, bad).norm():.2f}")


if __name__ == "__main__":
    main()
