"""Degeneration of the symplectic structure on oriented lines in 3-space.

In the (u, phi, r1, r2) chart of oriented space-like lines the restricted
2-form's characteristic pairs scale like 1/r2 and r2 as the chart parameter
r2 grows: the form blows up in one plane and collapses in the other, so no
single chart stays uniformly symplectic.  This script sweeps r2, fits the
log-log slopes, and writes the curves as CSV.
"""
import numpy as np

from lorentzbilliards import lines, output


def main():
    phi = 0.8
    r2s = np.geomspace(10.0, 1e4, 60)
    small, large = lines.omega3_eigen_scaling(phi, r2s)
    output.write_csv(
        "eigen_blowup.csv",
        ["r2", "pair_small", "pair_large"],
        [[r, s, l] for r, s, l in zip(r2s, small, large)],
    )
    s_small = lines.loglog_slope(r2s, small)
    s_large = lines.loglog_slope(r2s, large)
    print(f"phi = {phi}: fitted log-log slopes {s_small:+.4f} (expect -1) "
          f"and {s_large:+.4f} (expect +1)")
    a, b = lines.omega3_char_coeffs(phi, r2s[-1])
    print(f"characteristic coefficients at r2 = {r2s[-1]:.0f}: a = {a:.6g}, b = {b:.6g}")
    print(f"product of the pairs stays bounded: {small[-1] * large[-1]:.6f}")
    print("wrote eigen_blowup.csv")


if __name__ == "__main__":
    main()
