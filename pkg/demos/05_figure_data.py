"""Emit the data files behind the three reference figures into demos/out/.

fig1: impure input -- added, subtracted, and their pointwise difference.
fig2: two-angle mixture and angular average -- the (shared) outcome grids.
fig3: radial log-profile of the angular average + the purity table.

Grids are wigner-grid-v1 CSV; any plotting tool that reads "x,p,value"
rows can render them.
"""

import os

from sqvac import figure_data


def main():
    out = os.path.join(os.path.dirname(__file__), "out")
    for which in ("fig1", "fig2", "fig3"):
        for path in figure_data(which, out):
            print(path, f"({os.path.getsize(path) // 1024} KiB)")


if __name__ == "__main__":
    main()
