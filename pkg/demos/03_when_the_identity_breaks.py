"""Inputs for which adding and subtracting a photon do NOT coincide.

Four controls: an impure squeezed-thermal state, a displaced (coherent)
state, an incoherent sum of two different widths, and a second round of the
operation applied to an already photon-added state.
"""

import numpy as np

from sqvac import (
    GaussianComponent,
    GaussianWignerSpec,
    add_photon,
    coherent_state,
    identity_residual,
    rasterize,
    refined_geometry,
    renormalize,
    sub_photon,
    wigner_from_density,
)


def show(name, residual, floor):
    print(f"  {name:<28} residual {residual:8.4f}  (floor {floor})")


def main():
    print("states that break the added == subtracted coincidence:")

    impure = GaussianWignerSpec.single(4.0, 0.5)
    grid = rasterize(impure, refined_geometry(impure))
    chk = identity_residual(grid)
    show("impure sigma_x=4 sigma_p=1/2", chk.residual, 0.05)
    wp = renormalize(add_photon(grid))
    wm = renormalize(sub_photon(grid))
    print(f"  {'':<28} max|W+ - W-| = {np.max(np.abs(wp.values - wm.values)):.4f}")

    coh = wigner_from_density(coherent_state(1.0, 40))
    show("coherent alpha=1", identity_residual(coh).residual, 0.1)

    unequal = GaussianWignerSpec((GaussianComponent.pure(0.0, 2.0, 0.5),
                                  GaussianComponent.pure(0.0, 3.0, 0.5)))
    chk = identity_residual(rasterize(unequal, refined_geometry(unequal)))
    show("mixture of widths 2 and 3", chk.residual, 0.01)

    # the added outcome is itself no longer a squeezed vacuum
    pure = GaussianWignerSpec.pure_state(2.0)
    once = renormalize(add_photon(rasterize(pure, refined_geometry(pure))))
    show("second round on added state", identity_residual(once).residual, 0.01)

    print()
    print("compare demo 01: equal-width pure inputs sit at ~1e-5.")


if __name__ == "__main__":
    main()
