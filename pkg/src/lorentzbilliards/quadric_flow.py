"""Geodesic flow on a quadric in pseudo-Euclidean space, the billiard inside
it, and the associated first integrals (the signature-weighted analogues of
the classical ellipsoid integrals and the Joachimsthal product)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import billiard as _billiard
from . import confocal as _confocal
from . import surface_flow
from .metric import Metric, as_vector

CONSTRAINT_TOL = 1e-10


@dataclass(frozen=True)
class QuadricSurface:
    """The ellipsoid sum_i x_i^2 / a_i^2 = 1 in the diagonal metric with
    the given signs."""

    axes_sq: tuple[float, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.axes_sq) != len(self.signs):
            raise ValueError("axes and signs must have equal length")
        if any(a <= 0.0 for a in self.axes_sq):
            raise ValueError("axes squared must be positive")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +/-1")

    @property
    def n(self) -> int:
        return len(self.axes_sq)

    @property
    def metric(self) -> Metric:
        return Metric.diagonal(self.signs)

    @property
    def family(self) -> _confocal.ConfocalFamily:
        return _confocal.ConfocalFamily(axes_sq=tuple(self.axes_sq), signs=tuple(self.signs))

    @property
    def coeffs(self) -> np.ndarray:
        return 1.0 / np.asarray(self.axes_sq)

    def surface(self) -> surface_flow.ImplicitSurface:
        return _QuadricImplicit(self)

    def boundary(self) -> _billiard.QuadricBoundary:
        return _billiard.QuadricBoundary(self.metric, self.coeffs)

    def constraint_residuals(self, x, v) -> tuple[float, float]:
        x = as_vector(x)
        v = as_vector(v)
        c = self.coeffs
        return float(c @ x**2 - 1.0), float(c @ (x * v))

    def random_state(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """A random point on the quadric with a random tangent vector."""
        raw = rng.normal(size=self.n)
        x = raw / np.sqrt(float(self.coeffs @ raw**2))
        v = rng.normal(size=self.n)
        grad = 2.0 * self.coeffs * x
        n = self.metric.sharp(grad)
        v = v - (float(grad @ v) / float(grad @ n)) * n
        return x, v


class _QuadricImplicit(surface_flow.ImplicitSurface):
    def __init__(self, q: QuadricSurface):
        super().__init__(q.metric)
        self.coeffs = q.coeffs

    def value(self, x):
        x = as_vector(x)
        return float(self.coeffs @ x**2 - 1.0)

    def gradient(self, x):
        return 2.0 * self.coeffs * as_vector(x)

    def hessian_quad(self, x, v):
        v = as_vector(v)
        return float(2.0 * self.coeffs @ v**2)


def integrate_quadric_geodesic(
    q: QuadricSurface, x0, v0, length: float, **kwargs
) -> surface_flow.GeodesicRun:
    return surface_flow.integrate_geodesic(q.surface(), x0, v0, length, **kwargs)


# -- first integrals ---------------------------------------------------------


def integrals_F(q: QuadricSurface, x, v) -> np.ndarray:
    """The n quadratic first integrals
    F_k = v_k^2 / tau_k + sum_{i != k} (x_i v_k - x_k v_i)^2
          / (tau_i a_k^2 - tau_k a_i^2); they sum to <v,v>."""
    x = as_vector(x)
    v = as_vector(v)
    a2 = np.asarray(q.axes_sq)
    tau = np.asarray(q.signs, dtype=float)
    n = q.n
    out = np.empty(n)
    for k in range(n):
        cross = x * v[k] - x[k] * v
        denom = tau * a2[k] - tau[k] * a2
        terms = np.array(
            [cross[i] ** 2 / denom[i] for i in range(n) if i != k]
        )
        out[k] = v[k] ** 2 / tau[k] + float(np.sum(terms))
    return out


def joachimsthal(q: QuadricSurface, x, v) -> float:
    """Signature-weighted Joachimsthal product
    (sum_i x_i^2 / (tau_i a_i^4)) (sum_j v_j^2 / a_j^2)."""
    x = as_vector(x)
    v = as_vector(v)
    a2 = np.asarray(q.axes_sq)
    tau = np.asarray(q.signs, dtype=float)
    return float(np.sum(x**2 / (tau * a2**2)) * np.sum(v**2 / a2))


# -- the billiard inside the quadric -----------------------------------------


def billiard_in_quadric(
    q: QuadricSurface, start, direction, n_bounces: int
) -> _billiard.Trajectory:
    return _billiard.iterate(q.boundary(), start, direction, n_bounces)


# -- Jacobi-Chasles tangency spectra -----------------------------------------


def geodesic_tangent_lines(run: surface_flow.GeodesicRun, stride: int = 1):
    """(point, direction) pairs of tangent lines sampled along a geodesic."""
    return [(s.x, s.v) for s in run.states[::stride]]


def billiard_chord_lines(traj: _billiard.Trajectory):
    """(point, direction) pairs of the chord lines of a billiard trajectory."""
    return [(r.point, r.incoming) for r in traj.records]


def tangency_spectra(
    q: QuadricSurface,
    lines,
    drop_self: bool = False,
    self_tol: float = 1e-6,
    light_tol: float = 1e-6,
):
    """Tangency spectra of a list of lines against the confocal family of q.

    drop_self removes the lam ~ 0 member (the quadric itself) from geodesic
    tangent-line spectra.  Lines with nearly light-like directions or an
    identically-zero discriminant are skipped; tangency values sitting on a
    family pole (degenerate members) are kept, since they are conserved
    along the trajectory as well."""
    family = q.family
    m = q.metric
    spectra = []
    for base, direction in lines:
        d = as_vector(direction)
        if abs(m.norm2(d)) < light_tol * float(d @ d):
            continue
        spec = _confocal.tangent_spectrum_of_line(family, base, d)
        if spec.infinite:
            continue
        values = np.concatenate([spec.values, spec.pole_values])
        if drop_self:
            values = values[np.abs(values) > self_tol]
        spectra.append(np.sort(values))
    return spectra


def spectrum_spread(spectra) -> float:
    """Max over spectrum slots of (max - min) across a trajectory; infinite
    when the spectra disagree in size."""
    if not spectra:
        return float("nan")
    sizes = {len(s) for s in spectra}
    if len(sizes) != 1:
        return float("inf")
    stacked = np.array(spectra)
    return float(np.max(stacked.max(axis=0) - stacked.min(axis=0)))


def jacobi_chasles_check(q: QuadricSurface, lines, drop_self: bool = False):
    """Spread of the tangency spectra along a trajectory: (spread, size)."""
    spectra = tangency_spectra(q, lines, drop_self=drop_self)
    if not spectra:
        return float("nan"), 0
    return spectrum_spread(spectra), len(spectra[0])
