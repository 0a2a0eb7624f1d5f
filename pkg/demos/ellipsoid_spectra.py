"""Jacobi-Chasles spectra on the Lorentz ellipsoid x^2/1 + y^2/2 + z^2/3 = 1.

Every tangent line of a geodesic stays tangent to one fixed pseudo-confocal
quadric; every chord line of the billiard inside the ellipsoid stays tangent
to two.  The script integrates both dynamics, prints the tangency spectra,
and reports the drift of the first integrals F_k and of the Joachimsthal
quantity along the geodesic.
"""
import numpy as np

from lorentzbilliards import quadric_flow


def main():
    q = quadric_flow.QuadricSurface((1.0, 2.0, 3.0), (1, 1, -1))

    # the equator z = 0 is fixed by the reflection symmetry, hence totally
    # geodesic and free of the degeneracy locus: it supports a long run
    x0 = np.array([1.0, 0.0, 0.0])
    v0 = np.array([0.0, 1.0, 0.0])
    run = quadric_flow.integrate_quadric_geodesic(q, x0, v0, 100.0, record_every=100)
    lines = quadric_flow.geodesic_tangent_lines(run)
    spread, size = quadric_flow.jacobi_chasles_check(q, lines, drop_self=True)
    spec0 = quadric_flow.tangency_spectra(q, lines[:1], drop_self=True)[0]
    print(f"geodesic (arclength 100): {size} tangency value(s) {spec0}, spread {spread:.2e}")

    F0 = quadric_flow.integrals_F(q, run.states[0].x, run.states[0].v)
    J0 = quadric_flow.joachimsthal(q, run.states[0].x, run.states[0].v)
    f_drift = max(
        float(np.max(np.abs(quadric_flow.integrals_F(q, s.x, s.v) - F0)))
        for s in run.states
    )
    j_drift = max(
        abs(quadric_flow.joachimsthal(q, s.x, s.v) - J0) for s in run.states
    )
    print(f"F_k drift {f_drift:.2e}, Joachimsthal drift {j_drift:.2e}")

    traj = quadric_flow.billiard_in_quadric(q, [0.1, 0.05, 0.0], [1.0, 0.4, 0.1], 100)
    chords = quadric_flow.billiard_chord_lines(traj)
    spread_b, size_b = quadric_flow.jacobi_chasles_check(q, chords)
    spec_b = quadric_flow.tangency_spectra(q, chords[:1])[0]
    print(f"billiard (100 bounces): {size_b} tangency value(s) {spec_b}, spread {spread_b:.2e}")

    # a generic Lorentz geodesic leaves the space-like region and terminates
    # where the induced metric degenerates (the ellipsoid's tropic)
    rng = np.random.default_rng(3)
    xg, vg = q.random_state(rng)
    run_g = quadric_flow.integrate_quadric_geodesic(q, xg, vg, 100.0)
    surf = q.surface()
    print(
        f"generic geodesic: status '{run_g.status}' at t = {run_g.final.t:.3f}, "
        f"degeneracy measure {surf.singular_measure(run_g.final.x):.2e}"
    )


if __name__ == "__main__":
    main()
