"""The entire zero mean curvature graph with all three causal characters.

For constants a < 0 and p < 0 the surface

    X(u, v) = (v, p e^{-2ku} + u + R v^2/2, p e^{-2ku} - u + R v^2/2),
    k = sqrt(-2a),  R = sqrt(-a/2)

is the graph of a function t = f(x, y) over the whole (x, y)-plane, because
u -> p e^{-2ku} + u is an increasing bijection of the real line. The module
also carries the graph-form tools: the ZMC equation for t = f(x, y), and a
numerical test for straight lines on a graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, ClassVar

import numpy as np

from .errors import BracketFailure, InvalidParams, OutOfDomain
from .families import RFG, Interval, ParabolaCase, ParabolicFamily
from .minkowski import Vector3L

FD_STEP = 1e-4
MAX_DOUBLINGS = 1000


@dataclass(frozen=True)
class EntireGraph(ParabolicFamily):
    a: float
    p: float

    key: ClassVar[str] = "entire-graph"
    case: ClassVar[ParabolaCase] = ParabolaCase.SINGULAR
    b: ClassVar[float] = 0.0
    c: ClassVar[float] = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a < 0):
            raise InvalidParams(f"a < 0 is required, got a={self.a}")
        if not (math.isfinite(self.p) and self.p < 0):
            raise InvalidParams(f"p < 0 is required, got p={self.p}")

    @property
    def k(self) -> float:
        return math.sqrt(-2.0 * self.a)

    @property
    def radius(self) -> float:
        return math.sqrt(-self.a / 2.0)

    def maximal_domain(self) -> list[Interval]:
        return [Interval(-math.inf, math.inf)]

    def in_domain(self, p1: float) -> bool:
        return math.isfinite(p1)

    def component(self) -> Interval:
        return Interval(-math.inf, math.inf)

    def default_window(self):
        return ((-3.0, 3.0), (-3.0, 3.0))

    def rfg(self, u) -> RFG:
        u = np.asarray(u, dtype=float)
        k = self.k
        e = self.p * np.exp(-2.0 * k * u)
        zero = np.zeros_like(u)
        return RFG(zero + self.radius, zero, zero.copy(), zero.copy(), zero.copy(), zero.copy(),
                   e, -2.0 * k * e, 4.0 * k * k * e)

    def params(self) -> dict:
        return {"a": self.a, "p": self.p}

    def phi(self, u):
        """u -> p e^{-2ku} + u, strictly increasing."""
        return self.p * np.exp(-2.0 * self.k * np.asarray(u, dtype=float)) + u


def eval_graph_param(g: EntireGraph, u: float, v: float) -> Vector3L:
    return Vector3L.of(g.position(float(u), float(v)))


def solve_parameter(g: EntireGraph, x, y, tol: float = 1e-12) -> np.ndarray:
    """u* with phi(u*) = y - R x^2 / 2, by bracketed bisection (vectorised).

    Bisection continues to floating-point exhaustion of the bracket, so the
    result is as accurate as double precision allows; ``tol`` bounds the
    residual that must be reached.
    """
    if not tol > 0:
        raise InvalidParams("tol must be positive")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    target = y - g.radius * x * x / 2.0
    lo = np.full(target.shape, -1.0)
    hi = np.full(target.shape, 1.0)
    for _ in range(MAX_DOUBLINGS):
        bad = g.phi(lo) > target
        if not bad.any():
            break
        lo = np.where(bad, 2.0 * lo, lo)
    else:
        raise BracketFailure("lower bracket did not converge")
    for _ in range(MAX_DOUBLINGS):
        bad = g.phi(hi) < target
        if not bad.any():
            break
        hi = np.where(bad, 2.0 * hi, hi)
    else:
        raise BracketFailure("upper bracket did not converge")
    for _ in range(2200):
        mid = 0.5 * (lo + hi)
        done = (mid == lo) | (mid == hi)
        if done.all():
            break
        below = g.phi(mid) < target
        lo = np.where(below & ~done, mid, lo)
        hi = np.where(~below & ~done, mid, hi)
    flo = np.abs(g.phi(lo) - target)
    fhi = np.abs(g.phi(hi) - target)
    u = np.where(flo <= fhi, lo, hi)
    resid = np.minimum(flo, fhi)
    scale = np.maximum(1.0, np.abs(target))
    if np.any(resid > np.maximum(tol, 4 * np.finfo(float).eps) * scale):
        raise BracketFailure("bisection could not reach the residual tolerance")
    return u


def solve_height(g: EntireGraph, x, y, tol: float = 1e-12):
    """Height t with (x, y, t) on the graph."""
    u = solve_parameter(g, x, y, tol)
    x = np.asarray(x, dtype=float)
    t = g.p * np.exp(-2.0 * g.k * u) - u + g.radius * x * x / 2.0
    return float(t) if np.ndim(t) == 0 else t


def lightlike_curves(g: EntireGraph, u: float) -> tuple[Vector3L, Vector3L]:
    """The two null curves c+ and c- at parameter u."""
    e = g.p * math.exp(-2.0 * g.k * u)
    s = math.sqrt(-8.0 * e / g.k)
    return Vector3L(s, -e + u, -e - u), Vector3L(-s, -e + u, -e - u)


def lightlike_curve_tangents(g: EntireGraph, u: float) -> tuple[Vector3L, Vector3L]:
    e = g.p * math.exp(-2.0 * g.k * u)
    s = math.sqrt(-8.0 * e / g.k)
    ds = -g.k * s
    de = -2.0 * g.k * e
    return Vector3L(ds, -de + 1.0, -de - 1.0), Vector3L(-ds, -de + 1.0, -de - 1.0)


# ---------------------------------------------------------------- graph form

Partials = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class GraphFunction:
    """t = f(x, y) with optional analytic (fx, fy, fxx, fxy, fyy)."""

    name: str
    f: Callable
    partials_fn: Callable | None = None

    def __call__(self, x, y):
        return self.f(x, y)

    def partials(self, x, y) -> Partials:
        if self.partials_fn is not None:
            return tuple(np.asarray(v, dtype=float) for v in self.partials_fn(x, y))
        return finite_difference_partials(self.f, x, y)


def finite_difference_partials(fn, x, y, h: float = FD_STEP) -> Partials:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = fn(x, y)
    xp, xm = fn(x + h, y), fn(x - h, y)
    yp, ym = fn(x, y + h), fn(x, y - h)
    fx = (xp - xm) / (2 * h)
    fy = (yp - ym) / (2 * h)
    fxx = (xp - 2 * c + xm) / h**2
    fyy = (yp - 2 * c + ym) / h**2
    fxy = (fn(x + h, y + h) - fn(x + h, y - h) - fn(x - h, y + h) + fn(x - h, y - h)) / (4 * h * h)
    return fx, fy, fxx, fxy, fyy


def graph_zmc_residual(f: GraphFunction, x, y):
    """|(1 - fy^2) fxx + 2 fx fy fxy + (1 - fx^2) fyy|."""
    fx, fy, fxx, fxy, fyy = f.partials(x, y)
    res = np.abs((1 - fy**2) * fxx + 2 * fx * fy * fxy + (1 - fx**2) * fyy)
    return float(res) if np.ndim(res) == 0 else res


def graph_character(f: GraphFunction, x, y, tau: float = 1e-9):
    """Sign of 1 - fx^2 - fy^2 as 'S', 'T' or 'L' (band tau)."""
    fx, fy, *_ = f.partials(x, y)
    q = 1.0 - fx**2 - fy**2
    return np.where(q > tau, "S", np.where(q < -tau, "T", "L"))


def entire_graph_function(g: EntireGraph, analytic: bool = False) -> GraphFunction:
    """The height function; ``analytic`` adds implicit-differentiation partials."""

    def height(x, y):
        return solve_height(g, x, y)

    if not analytic:
        return GraphFunction("entire-graph", height)

    k, rad = g.k, g.radius

    def parts(x, y):
        x = np.asarray(x, dtype=float)
        u = solve_parameter(g, x, y)
        e = g.p * np.exp(-2.0 * k * u)
        d1 = 1.0 - 2.0 * k * e  # phi'
        d2 = 4.0 * k * k * e  # phi''
        ux, uy = -rad * x / d1, 1.0 / d1
        uxx = -rad / d1 - d2 * ux * ux / d1
        uxy = -d2 * ux * uy / d1
        uyy = -d2 * uy * uy / d1
        # t = y - 2u
        return -2 * ux, 1.0 - 2 * uy, -2 * uxx, -2 * uxy, -2 * uyy

    return GraphFunction("entire-graph", height, parts)


def helicoid_second_kind() -> GraphFunction:
    """t = x tanh y, a ruled ZMC graph."""

    def parts(x, y):
        x = np.asarray(x, dtype=float)
        th = np.tanh(y)
        s2 = 1.0 - th**2
        return th + 0 * x, x * s2, 0 * x + 0 * th, s2 + 0 * x, -2.0 * x * s2 * th

    return GraphFunction("helicoid", lambda x, y: np.asarray(x) * np.tanh(y), parts)


def scherk_graph() -> GraphFunction:
    """t = log cosh x - log cosh y."""

    def parts(x, y):
        tx, ty = np.tanh(x), np.tanh(y)
        return tx, -ty, 1 - tx**2, 0 * tx * ty, -(1 - ty**2)

    return GraphFunction("scherk", lambda x, y: np.log(np.cosh(x)) - np.log(np.cosh(y)), parts)


def plane_graph() -> GraphFunction:
    """t = x."""

    def parts(x, y):
        z = 0 * np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
        return z + 1.0, z, z, z, z

    return GraphFunction("plane", lambda x, y: np.asarray(x, dtype=float) + 0 * np.asarray(y), parts)


# ---------------------------------------------------------------- ruledness

@dataclass(frozen=True)
class RuledPoint:
    x: float
    y: float
    deviation: float  # minimum over candidate directions
    direction: tuple[float, float]
    asymptotic: bool  # candidates came from the second fundamental form

    @property
    def ruled(self) -> bool:
        return self.deviation < 1e-8


def candidate_directions(fxx: float, fxy: float, fyy: float, fallback: int = 36):
    """Null directions of fxx dx^2 + 2 fxy dx dy + fyy dy^2, or a uniform fan."""
    scale = max(abs(fxx), abs(fxy), abs(fyy))
    disc = fxy * fxy - fxx * fyy
    if scale > 1e-12 and disc >= 0:
        dirs = []
        root = math.sqrt(disc)
        if abs(fyy) > 1e-14 * scale:
            for m in ((-fxy + root) / fyy, (-fxy - root) / fyy):
                dirs.append((1.0, m))
        else:
            dirs.append((0.0, 1.0))
            if abs(fxy) > 1e-14 * scale:
                dirs.append((1.0, -fxx / (2 * fxy)))
            else:
                dirs.append((1.0, 0.0))
        return [tuple(np.array(d) / math.hypot(*d)) for d in dirs], True
    ang = np.arange(fallback) * math.pi / fallback
    return [(math.cos(t), math.sin(t)) for t in ang], False


def ruled_line_test(f: GraphFunction, points, half_length: float = 2.0, samples: int = 41) -> list[RuledPoint]:
    """Deviation of the graph from its tangent lines along candidate rulings."""
    out = []
    s = np.linspace(-half_length, half_length, samples)
    for x, y in points:
        x, y = float(x), float(y)
        t0 = float(f(x, y))
        if not math.isfinite(t0):
            raise OutOfDomain(f"graph undefined at ({x}, {y})")
        fx, fy, fxx, fxy, fyy = (float(v) for v in f.partials(x, y))
        dirs, asym = candidate_directions(fxx, fxy, fyy)
        best = (math.inf, (1.0, 0.0))
        for dx, dy in dirs:
            slope = fx * dx + fy * dy
            dev = float(np.abs(f(x + s * dx, y + s * dy) - (t0 + s * slope)).max())
            if dev < best[0]:
                best = (dev, (dx, dy))
        out.append(RuledPoint(x, y, best[0], best[1], asym))
    return out
