"""Linear algebra of Lorentz-Minkowski 3-space with metric dx^2 + dy^2 - dt^2.

Vectors are stored in the canonical basis (x, y, t). Every function accepts a
:class:`Vector3L` or anything numpy can turn into a length-3 array; the
vectorised helpers (``dot``, ``cross``) also broadcast over leading axes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DegenerateDirection, InvalidParams, NotLightlike

ETA = np.diag([1.0, 1.0, -1.0])

#: relative threshold used to call a vector lightlike
LIGHTLIKE_TOL = 1e-9


@dataclass(frozen=True)
class Vector3L:
    x: float
    y: float
    t: float

    def __post_init__(self):
        for name in ("x", "y", "t"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParams(f"Vector3L component {name} is not finite: {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, v: VectorLike) -> "Vector3L":
        if isinstance(v, Vector3L):
            return v
        a = np.asarray(v, dtype=float).reshape(3)
        return cls(a[0], a[1], a[2])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.t], dtype=dtype or float)

    def __iter__(self):
        return iter((self.x, self.y, self.t))

    def __add__(self, other):
        return Vector3L.of(np.asarray(self) + as_array(other))

    def __sub__(self, other):
        return Vector3L.of(np.asarray(self) - as_array(other))

    def __mul__(self, k: float):
        return Vector3L(self.x * k, self.y * k, self.t * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vector3L(-self.x, -self.y, -self.t)


VectorLike = Union[Vector3L, np.ndarray, tuple, list]


def as_array(v) -> np.ndarray:
    if isinstance(v, Vector3L):
        return np.asarray(v)
    return np.asarray(v, dtype=float)


class CausalCharacter(str, enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    @property
    def letter(self) -> str:
        return self.value[0].upper()


def dot(u, v) -> np.ndarray:
    """Broadcasting Minkowski inner product over the last axis."""
    u = as_array(u)
    v = as_array(v)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def cross(u, v) -> np.ndarray:
    """Broadcasting Lorentzian vector product over the last axis."""
    u = as_array(u)
    v = as_array(v)
    ux, uy, ut = u[..., 0], u[..., 1], u[..., 2]
    vx, vy, vt = v[..., 0], v[..., 1], v[..., 2]
    return np.stack(
        [uy * vt - ut * vy, ut * vx - ux * vt, -(ux * vy - uy * vx)], axis=-1
    )


def lorentz_dot(u: VectorLike, v: VectorLike) -> float:
    return float(dot(u, v))


def lorentz_cross(u: VectorLike, v: VectorLike) -> Vector3L:
    """The unique w with <w, z> = det(u, v, z) for every z."""
    return Vector3L.of(cross(u, v))


def causal_character(v: VectorLike, tol: float = 0.0) -> CausalCharacter:
    """Classify a vector by the sign of <v, v>.

    With ``tol > 0`` the vector counts as lightlike whenever
    ``|<v, v>| <= tol * |v|_E^2``; the zero vector is always spacelike.
    """
    a = as_array(v)
    q = float(dot(a, a))
    norm2 = float(a @ a)
    if norm2 == 0.0:
        return CausalCharacter.SPACELIKE
    if abs(q) <= tol * norm2:
        return CausalCharacter.LIGHTLIKE
    if q > 0:
        return CausalCharacter.SPACELIKE
    if q < 0:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.LIGHTLIKE


class AxisKind(str, enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class Isometry:
    """Affine isometry p -> linear @ p + translation."""

    linear: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        m = np.array(self.linear, dtype=float).reshape(3, 3)
        tr = np.array(self.translation, dtype=float).reshape(3)
        m.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "linear", m)
        object.__setattr__(self, "translation", tr)
        if form_defect(m) > 1e-12 * max(1.0, float(np.abs(m).max()) ** 2):
            raise InvalidParams("linear part does not preserve the Minkowski form")

    def apply(self, p):
        """Map points (last axis of size 3)."""
        return as_array(p) @ self.linear.T + self.translation

    def apply_vector(self, v):
        """Map tangent vectors; the translation is ignored."""
        return as_array(v) @ self.linear.T

    def __call__(self, p: VectorLike) -> Vector3L:
        return Vector3L.of(self.apply(p))

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        return Isometry(
            self.linear @ other.linear, self.linear @ other.translation + self.translation
        )

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))


def form_defect(m: np.ndarray) -> float:
    """max |M^T eta M - eta|, zero for a Lorentz matrix."""
    m = np.asarray(m, dtype=float)
    return float(np.abs(m.T @ ETA @ m - ETA).max())


def one_parameter_isometry(kind: AxisKind | str, theta: float) -> Isometry:
    """Element of the identity component fixing a coordinate axis pointwise.

    ``timelike``: rotation about the t-axis; ``spacelike``: boost fixing e1;
    ``lightlike``: null rotation fixing span{e2 + e3}.
    """
    kind = AxisKind(kind)
    c, s = math.cos(theta), math.sin(theta)
    if kind is AxisKind.TIMELIKE:
        m = [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    elif kind is AxisKind.SPACELIKE:
        ch, sh = math.cosh(theta), math.sinh(theta)
        m = [[1.0, 0.0, 0.0], [0.0, ch, sh], [0.0, sh, ch]]
    else:
        h = theta * theta / 2.0
        m = [[1.0, theta, -theta], [-theta, 1.0 - h, h], [-theta, -h, 1.0 + h]]
    return Isometry(np.array(m))


_FLIP_YT = np.diag([1.0, -1.0, -1.0])


def null_normalizing_isometry(d: VectorLike, p0: VectorLike) -> Isometry:
    """Isometry carrying the line p0 + s*d onto {(0, s, s)}.

    Rotates about the t-axis so the direction becomes (0, d_t, d_t), then
    applies (x, y, t) -> (x, -y, -t) when d_t < 0 so the image direction is a
    positive multiple of (0, 1, 1). The base point goes to the origin.
    """
    d = as_array(d)
    p0 = as_array(p0)
    n2 = float(d @ d)
    if n2 == 0.0 or abs(float(dot(d, d))) > 1e-10 * n2:
        raise NotLightlike(f"direction {d.tolist()} is not lightlike")
    dt = float(d[2])
    if dt == 0.0:
        raise DegenerateDirection("lightlike direction has zero t-component")
    phi = math.atan2(dt, 0.0) - math.atan2(d[1], d[0])
    rot = one_parameter_isometry(AxisKind.TIMELIKE, phi).linear
    lin = _FLIP_YT @ rot if dt < 0 else rot
    return Isometry(lin, -lin @ p0)
