"""Pseudo-Euclidean linear algebra.

A metric is a nondegenerate symmetric bilinear form stored as a full Gram
matrix, so diagonal signature forms and the null-coordinate plane with
ds^2 = dx dy share one code path.  Vectors, covectors and points are plain
1-D numpy arrays.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import (
    DegenerateMetricError,
    DimensionMismatchError,
    SingularNormalError,
)

EPS_LIGHT = 1e-10


class CausalClass(enum.Enum):
    SPACE_LIKE = "space-like"
    TIME_LIKE = "time-like"
    LIGHT_LIKE = "light-like"


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite components")
    return v


class Metric:
    """A nondegenerate symmetric bilinear form on R^n."""

    def __init__(self, gram):
        gram = np.asarray(gram, dtype=float)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise DimensionMismatchError("Gram matrix must be square")
        if not np.allclose(gram, gram.T, atol=1e-14 * max(1.0, np.abs(gram).max())):
            raise ValueError("Gram matrix must be symmetric")
        gram = 0.5 * (gram + gram.T)
        scale = np.abs(gram).max()
        if scale == 0.0 or abs(np.linalg.det(gram / scale)) <= 1e-12:
            raise DegenerateMetricError("Gram matrix is numerically singular")
        self.gram = gram
        self.gram_inv = np.linalg.inv(gram)
        self.n = gram.shape[0]
        eigs = np.linalg.eigvalsh(gram)
        self.signature = (int(np.sum(eigs > 0)), int(np.sum(eigs < 0)))

    # -- constructors -------------------------------------------------------

    @classmethod
    def euclidean(cls, n: int) -> "Metric":
        return cls(np.eye(n))

    @classmethod
    def diagonal(cls, signs) -> "Metric":
        return cls(np.diag(np.asarray(signs, dtype=float)))

    @classmethod
    def from_signature(cls, k: int, l: int) -> "Metric":
        return cls.diagonal([1.0] * k + [-1.0] * l)

    @classmethod
    def dxdy_plane(cls) -> "Metric":
        """The Lorentz plane in null coordinates, <v,v> = v_x * v_y."""
        return cls([[0.0, 0.5], [0.5, 0.0]])

    # -- basic operations ---------------------------------------------------

    def _check_dim(self, v: np.ndarray) -> None:
        if v.shape[0] != self.n:
            raise DimensionMismatchError(
                f"vector of dimension {v.shape[0]} in a {self.n}-dimensional space"
            )

    def inner(self, u, v) -> float:
        u = as_vector(u)
        v = as_vector(v)
        self._check_dim(u)
        self._check_dim(v)
        return float(u @ self.gram @ v)

    def norm2(self, v) -> float:
        return self.inner(v, v)

    def flat(self, v) -> np.ndarray:
        """Lower the index: vector -> covector."""
        v = as_vector(v)
        self._check_dim(v)
        return self.gram @ v

    def sharp(self, p) -> np.ndarray:
        """Raise the index: covector -> vector."""
        p = as_vector(p)
        self._check_dim(p)
        return self.gram_inv @ p

    def classify(self, v, eps_light: float = EPS_LIGHT) -> CausalClass:
        v = as_vector(v)
        self._check_dim(v)
        euclid2 = float(v @ v)
        if euclid2 == 0.0:
            raise ValueError("cannot classify the zero vector")
        q = self.norm2(v)
        if q > eps_light * euclid2:
            return CausalClass.SPACE_LIKE
        if q < -eps_light * euclid2:
            return CausalClass.TIME_LIKE
        return CausalClass.LIGHT_LIKE

    def is_light_like(self, v, eps_light: float = EPS_LIGHT) -> bool:
        return self.classify(v, eps_light) is CausalClass.LIGHT_LIKE

    def decompose(self, w, nu, eps_light: float = EPS_LIGHT):
        """Split w into components tangent and normal to the hyperplane with
        normal vector nu.  Undefined when nu is light-like."""
        w = as_vector(w)
        nu = as_vector(nu)
        self._check_dim(w)
        self._check_dim(nu)
        nn = self.norm2(nu)
        if abs(nn) <= eps_light * float(nu @ nu):
            raise SingularNormalError("normal vector is light-like")
        normal = (self.inner(w, nu) / nn) * nu
        return w - normal, normal

    def unit(self, v) -> np.ndarray:
        """Scale a non-light-like vector to <v,v> = +/-1."""
        v = as_vector(v)
        q = self.norm2(v)
        if q == 0.0:
            raise SingularNormalError("cannot normalize a light-like vector")
        return v / np.sqrt(abs(q))

    def __repr__(self) -> str:
        k, l = self.signature
        return f"Metric(n={self.n}, signature=({k},{l}))"


def cross2(a, b) -> float:
    """Cross product of two plane vectors: a_x b_y - a_y b_x."""
    a = as_vector(a)
    b = as_vector(b)
    if a.shape[0] != 2 or b.shape[0] != 2:
        raise DimensionMismatchError("cross2 requires dimension 2")
    return float(a[0] * b[1] - a[1] * b[0])
