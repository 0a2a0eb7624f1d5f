"""Phase portrait of the billiard in the unit circle on the Lorentz plane.

The circle in the ds^2 = dx dy metric has four singular points where the
normal goes light-like; away from them the billiard map has an explicit
closed form in the chord angles.  This script iterates a fan of starting
chords, colors each orbit by its conserved level, and overlays the envelope
conic of one orbit.
"""
import numpy as np

from lorentzbilliards import circle, output

N_ORBITS = 24
N_STEPS = 400


def main():
    rng = np.random.default_rng(7)
    canvas = output.SvgCanvas(width=720, height=720, world=(0.0, 2 * np.pi, 0.0, 2 * np.pi))
    kept = 0
    for _ in range(200):
        if kept >= N_ORBITS:
            break
        t1 = rng.uniform(0, 2 * np.pi)
        gap = rng.uniform(0.3, 2 * np.pi - 0.3)
        try:
            orb = circle.orbit(circle.ChordCoords(t1, t1 + gap), N_STEPS)
        except Exception:
            continue
        lev = circle.integral_level(orb[0])
        shade = output.GRAY_RAMP[kept % len(output.GRAY_RAMP)]
        for c in orb:
            canvas.dot((np.mod(c.t1, 2 * np.pi), np.mod(c.t2 - c.t1, 2 * np.pi)), color=shade, radius_px=1.0)
        print(f"orbit {kept:2d}: level num={lev.num:+.4f} den={lev.den:+.4f}")
        kept += 1
    canvas.save("circle_phase_portrait.svg")

    # one orbit in the plane, with the conic every chord is tangent to
    orb = circle.orbit(circle.ChordCoords(0.3, 1.9), 200)
    lam = circle.integral_level(orb[0]).lam
    plane = output.SvgCanvas(width=720, height=720, world=(-1.2, 1.2, -1.2, 1.2))
    plane.circle((0, 0), 1.0, stroke="#444444")
    for c in orb:
        q1, q2 = c.endpoints()
        plane.polyline([tuple(q1), tuple(q2)], stroke="#99bbdd", width=0.4)
    alphas = np.linspace(0, 2 * np.pi, 400)
    pts = []
    for a in alphas:
        try:
            pts.append(tuple(circle.envelope_point(a, lam)))
        except ValueError:
            if pts:
                plane.polyline(pts, stroke="#cc3333", width=1.2)
            pts = []
    if pts:
        plane.polyline(pts, stroke="#cc3333", width=1.2)
    plane.save("circle_orbit_envelope.svg")
    worst = max(abs(circle.chord_tangency_discriminant(c, lam)) for c in orb)
    print(f"orbit level lambda = {lam:.6f}, worst tangency residual {worst:.2e}")
    print("wrote circle_phase_portrait.svg, circle_orbit_envelope.svg")


if __name__ == "__main__":
    main()
