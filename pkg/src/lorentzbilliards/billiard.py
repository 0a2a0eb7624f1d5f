"""Generic pseudo-Euclidean billiard dynamics.

Boundaries are level sets F = 0 with the table on the F < 0 side.  The
reflection replaces the normal component of the velocity, which preserves the
scalar square and hence the causal class of the chord.  Points where the
metric normal is light-like are singular: the billiard map is undefined and
trajectories stop there.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EscapeError,
    GrazeError,
    LocalChartError,
    SingularNormalError,
    TrajectoryStopped,
)
from .metric import CausalClass, Metric, as_vector, cross2

EPS_SING = 1e-9
EPS_STEP = 1e-12
ON_BOUNDARY_TOL = 1e-10


class Boundary:
    """A smooth boundary hypersurface F = 0 in a pseudo-Euclidean space."""

    def __init__(self, metric: Metric):
        self.metric = metric

    def value(self, q: np.ndarray) -> float:
        raise NotImplementedError

    def gradient(self, q: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scale(self) -> float:
        """Characteristic length used to normalize on-boundary tests."""
        return 1.0


class QuadricBoundary(Boundary):
    """Ellipsoidal table sum_i coeffs_i x_i^2 = 1, coeffs positive."""

    def __init__(self, metric: Metric, coeffs):
        super().__init__(metric)
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 1 or coeffs.shape[0] != metric.n:
            raise ValueError("coefficient vector must match the space dimension")
        if np.any(coeffs <= 0.0):
            raise ValueError("quadric coefficients must be positive")
        self.coeffs = coeffs

    @classmethod
    def from_semi_axes(cls, metric: Metric, semi_axes) -> "QuadricBoundary":
        semi_axes = np.asarray(semi_axes, dtype=float)
        return cls(metric, 1.0 / semi_axes**2)

    def value(self, q):
        q = as_vector(q)
        return float(self.coeffs @ q**2 - 1.0)

    def gradient(self, q):
        q = as_vector(q)
        return 2.0 * self.coeffs * q

    def scale(self):
        return float(1.0 / np.sqrt(self.coeffs.min()))


class ImplicitBoundary(Boundary):
    """Boundary given by callables F and grad F."""

    def __init__(self, metric: Metric, func, grad, scale: float = 1.0):
        super().__init__(metric)
        self._func = func
        self._grad = grad
        self._scale = float(scale)

    def value(self, q):
        return float(self._func(as_vector(q)))

    def gradient(self, q):
        return np.asarray(self._grad(as_vector(q)), dtype=float)

    def scale(self):
        return self._scale


class GraphBoundary(ImplicitBoundary):
    """Curve y = f(x) in the plane, as the zero set of F(x, y) = y - f(x)."""

    def __init__(self, metric: Metric, f, df, d2f, scale: float = 1.0):
        super().__init__(
            metric,
            func=lambda q: q[1] - f(q[0]),
            grad=lambda q: np.array([-df(q[0]), 1.0]),
            scale=scale,
        )
        self.f = f
        self.df = df
        self.d2f = d2f


def _require_on_boundary(boundary: Boundary, q: np.ndarray) -> None:
    if abs(boundary.value(q)) > ON_BOUNDARY_TOL * max(1.0, boundary.scale() ** 2):
        raise ValueError("point is not on the boundary")


def normal_at(boundary: Boundary, q, check: bool = True) -> np.ndarray:
    """Metric normal vector at a boundary point (index-raised gradient)."""
    q = as_vector(q)
    if check:
        _require_on_boundary(boundary, q)
    return boundary.metric.sharp(boundary.gradient(q))


def is_singular(boundary: Boundary, q, eps_sing: float = EPS_SING) -> bool:
    """True when the metric normal at q is light-like (tangent to the boundary)."""
    nu = normal_at(boundary, q, check=False)
    return abs(boundary.metric.norm2(nu)) < eps_sing * float(nu @ nu)


def reflect(boundary: Boundary, q, w, eps_sing: float = EPS_SING) -> np.ndarray:
    """Billiard reflection at q: flip the normal component of w."""
    q = as_vector(q)
    w = as_vector(w)
    nu = normal_at(boundary, q)
    m = boundary.metric
    nn = m.norm2(nu)
    if abs(nn) < eps_sing * float(nu @ nu):
        raise TrajectoryStopped("singular boundary point: light-like normal")
    return w - 2.0 * (m.inner(w, nu) / nn) * nu


def reflection_scale(metric: Metric, w, nu) -> float:
    """Conditioning scale of a reflection.

    Near-light-like normals make the correction term 2 <w, nu>/<nu, nu> nu
    large, and its roundoff is proportional to its size; energy defects
    should therefore be measured relative to the squared magnitudes of the
    data and of that correction."""
    w = as_vector(w)
    nu = as_vector(nu)
    corr = 2.0 * (metric.inner(w, nu) / metric.norm2(nu)) * nu
    return max(1.0, float(w @ w), float(corr @ corr))


def next_hit(
    boundary: Boundary,
    start,
    direction,
    s_max: float | None = None,
    n_brackets: int = 256,
) -> tuple[np.ndarray, float]:
    """First forward intersection of the ray start + s * direction, s > EPS_STEP.

    Quadric tables are solved exactly; general curves by bracketing plus
    Newton polish.  Returns (point, s)."""
    start = as_vector(start)
    direction = as_vector(direction)
    if isinstance(boundary, QuadricBoundary):
        return _next_hit_quadric(boundary, start, direction)
    return _next_hit_bracketed(boundary, start, direction, s_max, n_brackets)


def _next_hit_quadric(boundary, start, direction):
    c = boundary.coeffs
    a = float(c @ direction**2)
    b = float(c @ (start * direction))
    c0 = float(c @ start**2 - 1.0)
    step_floor = EPS_STEP * boundary.scale()
    if a == 0.0:
        if b == 0.0:
            raise EscapeError("ray is parallel to the quadric at infinity")
        s = -c0 / (2.0 * b)
        if s <= step_floor:
            raise EscapeError("no forward intersection")
        return start + s * direction, s
    disc = b * b - a * c0
    scale = max(abs(b * b), abs(a * c0), 1e-300)
    if disc < -1e-12 * scale:
        raise EscapeError("no forward intersection")
    if disc < 1e-12 * scale:
        raise GrazeError("tangential grazing intersection")
    sq = np.sqrt(max(disc, 0.0))
    # cancellation-free quadratic roots: q = -(b + sign(b) sqrt(disc))
    if b == 0.0:
        roots = sorted([-sq / a, sq / a])
    else:
        qv = -(b + np.copysign(sq, b))
        roots = sorted([qv / a, c0 / qv])
    for s in roots:
        if s > step_floor:
            return start + s * direction, s
    raise EscapeError("no forward intersection")


def _next_hit_bracketed(boundary, start, direction, s_max, n_brackets):
    if s_max is None:
        s_max = 8.0 * boundary.scale() / max(float(np.linalg.norm(direction)), 1e-300)
    step_floor = EPS_STEP * boundary.scale()
    ss = np.linspace(step_floor, s_max, n_brackets + 1)
    vals = np.array([boundary.value(start + s * direction) for s in ss])
    for i in range(n_brackets):
        if vals[i] == 0.0 and i > 0:
            s = ss[i]
            return start + s * direction, float(s)
        if vals[i] * vals[i + 1] < 0.0:
            s = _newton_bisect(boundary, start, direction, ss[i], ss[i + 1])
            return start + s * direction, s
    raise EscapeError("no forward intersection within the search window")


def _newton_bisect(boundary, start, direction, lo, hi, tol=1e-12, max_iter=80):
    f_lo = boundary.value(start + lo * direction)
    s = 0.5 * (lo + hi)
    for _ in range(max_iter):
        q = start + s * direction
        f = boundary.value(q)
        if abs(f) <= tol:
            return float(s)
        if f_lo * f < 0.0:
            hi = s
        else:
            lo = s
            f_lo = f
        df = float(boundary.gradient(q) @ direction)
        s_newton = s - f / df if df != 0.0 else None
        s = s_newton if s_newton is not None and lo < s_newton < hi else 0.5 * (lo + hi)
    return float(s)


def harmonic_defect(a, b, c, d) -> float:
    """Harmonicity residual [a,c][b,d] + [a,d][b,c] of four plane directions;
    zero iff the four concurrent lines form a harmonic quadruple."""
    return cross2(a, c) * cross2(b, d) + cross2(a, d) * cross2(b, c)


def _bounce_harmonic_defect(boundary: Boundary, q, incoming, outgoing, nu) -> float:
    grad = boundary.gradient(q)
    tangent = np.array([-grad[1], grad[0]])
    norm = max(
        float(np.linalg.norm(tangent)) * float(np.linalg.norm(nu)),
        1e-300,
    ) * max(
        float(np.linalg.norm(incoming)) * float(np.linalg.norm(outgoing)), 1e-300
    )
    return harmonic_defect(tangent, nu, incoming, outgoing) / norm


@dataclass
class BounceRecord:
    index: int
    point: np.ndarray
    incoming: np.ndarray
    outgoing: np.ndarray
    normal: np.ndarray
    energy: float
    harmonic: float


@dataclass
class Trajectory:
    records: list[BounceRecord] = field(default_factory=list)
    status: str = "ok"

    def __len__(self):
        return len(self.records)

    def points(self) -> np.ndarray:
        return np.array([r.point for r in self.records])


def iterate(boundary: Boundary, start, direction, n_bounces: int) -> Trajectory:
    """Run n_bounces reflections of the ray from `start`; stops early with a
    typed status on singular impacts or escape."""
    traj = Trajectory()
    q = as_vector(start).copy()
    w = as_vector(direction).copy()
    m = boundary.metric
    for i in range(n_bounces):
        try:
            q_hit, _ = next_hit(boundary, q, w)
        except EscapeError:
            traj.status = "escaped"
            return traj
        except GrazeError:
            traj.status = "grazed"
            return traj
        if is_singular(boundary, q_hit):
            traj.status = "stopped_singular"
            return traj
        nu = normal_at(boundary, q_hit)
        w_out = reflect(boundary, q_hit, w)
        harmonic = (
            _bounce_harmonic_defect(boundary, q_hit, w, w_out, nu) if m.n == 2 else float("nan")
        )
        traj.records.append(
            BounceRecord(
                index=i,
                point=q_hit,
                incoming=w,
                outgoing=w_out,
                normal=nu,
                energy=m.norm2(w_out),
                harmonic=harmonic,
            )
        )
        q, w = q_hit, w_out
    return traj


def double_reflection_near_singular(a: float, u: float, s: float) -> tuple[float, float]:
    """Slopes after a double reflection on the parabola y = a x^2 near its
    singular point at the origin of the null-coordinate plane.

    An incoming ray of slope u reflects at abscissa s, then at abscissa t;
    returns (t, v) with v the outgoing slope.  For the exact parabola the
    reflection relations u f'(s)^2 (t - s) = f(t) - f(s) and
    v f'(t)^2 (t - s) = f(t) - f(s) close in elementary form."""
    if a <= 0.0:
        raise ValueError("parabola coefficient must be positive")
    if s == 0.0 or u == 0.0:
        raise ValueError("need a nonzero impact abscissa and slope")
    # u (2 a s)^2 (t - s) = a (t^2 - s^2)  =>  t = 4 a u s^2 - s
    t = 4.0 * a * u * s**2 - s
    if t == 0.0:
        raise LocalChartError("second impact lands on the singular point")
    v = u * (s / t) ** 2
    return t, v
