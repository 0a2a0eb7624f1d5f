"""Geodesics on the Lorentz surface of revolution r = 2 + sin z.

The induced metric degenerates on the tropics |f'(z)| = 1.  Between them the
cross-ratio of meridian, parallel, tangent, and null directions gives the
Clairaut-type invariant (1 - cr^2)/r^2: space-like geodesics oscillate inside
the momentum radius, light-like ones sit on the zero level, and time-like
ones run into a tropic along the null direction.
"""
import numpy as np

from lorentzbilliards import output, revolution


def state(s, z0, phi0, v_phi, v_z):
    r = s.f(z0)
    x = np.array([r * np.cos(phi0), r * np.sin(phi0), z0])
    e_r = np.array([np.cos(phi0), np.sin(phi0), 0.0])
    e_phi = np.array([-np.sin(phi0), np.cos(phi0), 0.0])
    v = s.df(z0) * v_z * e_r + v_phi * e_phi + v_z * np.array([0.0, 0.0, 1.0])
    return x, v


def main():
    s = revolution.sine_profile(2.0)
    canvas = output.SvgCanvas(width=720, height=720, world=(-3.4, 3.4, -3.4, 3.4))
    runs = []

    x0, v0 = state(s, 0.1, 0.0, 1.2, 0.4)
    run = revolution.integrate_revolution_geodesic(s, x0, v0, 60.0, record_every=3)
    runs.append(("space-like", run, "#3366cc"))

    zl = 0.3
    v_phi = np.sqrt(1.0 - s.df(zl) ** 2)
    xl, vl = state(s, zl, 1.0, v_phi, 1.0)
    run_l = revolution.integrate_revolution_geodesic(s, xl, vl, 20.0, record_every=3)
    runs.append(("light-like", run_l, "#777777"))

    xt, vt = state(s, 1.5, 2.0, 0.3, 1.0)
    run_t = revolution.integrate_revolution_geodesic(
        s, xt, vt, 50.0, stall_factor=1e-6, record_every=3
    )
    runs.append(("time-like", run_t, "#cc3333"))

    for name, run, color in runs:
        inv = [revolution.clairaut_invariant(s, st.x, st.v) for st in run.states]
        print(
            f"{name:10s}: status '{run.status}', invariant {inv[0]:+.6f}, "
            f"drift {max(inv) - min(inv):.2e}"
        )
        canvas.polyline([(st.x[0], st.x[1]) for st in run.states], stroke=color, width=0.8)
    angle = revolution.meridian_angle(s, run_t.final.x, run_t.final.v)
    zf = float(run_t.final.x[2])
    print(f"time-like termination: z = {zf:.4f}, 1 - f'(z)^2 = {1 - s.df(zf)**2:.2e}, "
          f"angle to the null direction {angle:.2e}")

    # tropic circles (top view)
    for z in np.linspace(-2.0, 2.0, 2001):
        if abs(abs(s.df(z)) - 1.0) < 1e-3:
            canvas.circle((0, 0), s.f(z), stroke="#ddaa66")
    canvas.save("clairaut_surface.svg")
    print("wrote clairaut_surface.svg (top view; tan circles mark the tropics)")


if __name__ == "__main__":
    main()
