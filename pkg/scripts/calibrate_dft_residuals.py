#!/usr/bin/env python3
"""Regenerate the Hermite/Fourier eigen-residual calibration fixture.

Records the relative residuals of the sampled Hermite functions as
(-i)^n eigenvectors of the quadrature Fourier operator on the standard
refinement grids.  The committed fixture pins these numbers; the acceptance
suite compares fresh runs against it within 10%.
"""

import json
import pathlib

from conjugations.transforms import calibration_grid, dft_eigen_check

GRID_SIZES = (128, 256, 512)
N_MAX = 8

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "dft_residuals.json"


def main():
    table = {}
    for N in GRID_SIZES:
        grid = calibration_grid(N)
        table[str(N)] = [dft_eigen_check(n, grid).residual for n in range(N_MAX + 1)]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w") as fh:
        json.dump({"grid_sizes": list(GRID_SIZES), "n_max": N_MAX, "residuals": table}, fh, indent=2)
        fh.write("\n")
    print(f"wrote {OUT}")
    for N in GRID_SIZES:
        print(N, " ".join(f"{v:.3e}" for v in table[str(N)]))


if __name__ == "__main__":
    main()
