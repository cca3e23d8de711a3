"""Zero mean curvature surfaces of Riemann type: parameters, domains, positions
and analytic partial derivatives.

Three kinds of foliating circle give the families:

* Euclidean circles in spacelike planes (``EuclideanGeneral``, ``EuclideanSingular``)
* hyperbolas in timelike planes (``HyperbolaGeneral``, ``HyperbolaSingular``)
* parabolas in lightlike planes (``Parabola``; the entire graph lives in
  :mod:`riemann_zmc.entire_graph`)

Every family maps a parameter pair ``(p1, p2)`` to a point ``(x, y, t)``.
``p1`` is the leaf parameter (radius ``r`` or ``u``), ``p2`` the position on
the leaf (``theta`` or ``v``). Positions and derivatives are vectorised: they
broadcast ``p1`` against ``p2`` and return arrays with a trailing axis of 3.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from numpy.polynomial import Polynomial

from .errors import InvalidParams, OutOfDomain, ZeroRadius
from .minkowski import Isometry, Vector3L
from .quadrature import Component, EvenQuartic, ProfileIntegrator

TWO_PI = 2.0 * math.pi
#: relative tolerance for parameter equalities such as b = 2a or c = delta
EQ_RTOL = 1e-12
V_WINDOW_MAX = 40.0


def close(x: float, y: float) -> bool:
    return abs(x - y) <= EQ_RTOL * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidParams(f"empty interval ({self.lo}, {self.hi})")

    def contains(self, x: float) -> bool:
        lo_ok = x >= self.lo if self.lo_closed else x > self.lo
        hi_ok = x <= self.hi if self.hi_closed else x < self.hi
        return lo_ok and hi_ok

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)


def _stack(x, y, t) -> np.ndarray:
    x, y, t = np.broadcast_arrays(x, y, t)
    return np.stack([x, y, t], axis=-1).astype(float)


def _zeros_like(*arrays) -> np.ndarray:
    return np.zeros(np.broadcast(*arrays).shape)


class SurfaceFamily:
    """Common interface; concrete families are frozen dataclasses."""

    key: ClassVar[str]
    p1_name: ClassVar[str] = "r"
    p2_name: ClassVar[str] = "theta"
    periodic: ClassVar[bool] = False

    def maximal_domain(self) -> list[Interval]:
        raise NotImplementedError

    def component(self) -> Interval:
        """The domain component the instance is evaluated on by default."""
        return self.maximal_domain()[0]

    def in_domain(self, p1: float) -> bool:
        return any(iv.contains(p1) for iv in self.maximal_domain())

    def check_domain(self, p1) -> None:
        for value in np.atleast_1d(np.asarray(p1, dtype=float)).ravel():
            if not self.in_domain(float(value)):
                raise OutOfDomain(f"{self.p1_name}={value!r} is outside the domain of {self.key}")

    def default_window(self) -> tuple[tuple[float, float], tuple[float, float]]:
        raise NotImplementedError

    def position(self, p1, p2) -> np.ndarray:
        raise NotImplementedError

    def derivatives(self, p1, p2, order: int = 1) -> tuple[np.ndarray, ...]:
        """(X1, X2) or (X1, X2, X11, X12, X22) as arrays."""
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError


# ---------------------------------------------------------------- circles

def _circle(kind: str, theta, order: int):
    """Unit circle of the given kind and its theta-derivatives."""
    theta = np.asarray(theta, dtype=float)
    z = np.zeros_like(theta)
    if kind == "euclid":
        c, s = np.cos(theta), np.sin(theta)
        vals = [_stack(c, s, z), _stack(-s, c, z), _stack(-c, -s, z)]
    elif kind == "hyperbola-i":
        ch, sh = np.cosh(theta), np.sinh(theta)
        vals = [_stack(z, ch, sh), _stack(z, sh, ch), _stack(z, ch, sh)]
    else:
        ch, sh = np.cosh(theta), np.sinh(theta)
        vals = [_stack(z, sh, ch), _stack(z, ch, sh), _stack(z, sh, ch)]
    return vals[: order + 1]


def _window_in(comp: Interval, default_hi: float = 3.0, default_lo: float = 0.05):
    """Positive compact window inside a component, clipped away from its ends."""
    lo, hi = comp.lo, comp.hi
    margin = 0.01 * min(hi - lo, 1.0)
    if hi <= 0:
        wlo, whi = max(lo + margin, -default_hi), min(hi - margin, -default_lo)
        if wlo >= whi:
            wlo = hi - min(default_hi, hi - lo) + margin
        return (wlo, whi)
    wlo = max(lo + margin, default_lo) if lo < default_lo else lo + margin
    whi = min(hi - margin, max(default_hi, wlo + default_hi))
    return (wlo, whi)


class IntegralFamily(SurfaceFamily):
    """Families of the form profile(r) + r * circle(theta).

    ``profile(r) = J0(r) e0 + J2(r) e2`` with ``J0 = int 1/Delta`` and
    ``J2 = int s^2/Delta`` from the base point ``r0``.
    """

    circle_kind: ClassVar[str]

    def _setup(self, quartic: EvenQuartic, r0: float | None):
        comps = quartic.components()
        if not comps:
            raise InvalidParams("Delta^2 is positive nowhere; the domain is empty")
        intervals = [Interval(c.lo.value, c.hi.value) for c in comps]
        if r0 is None:
            r0 = _default_base_point(intervals)
        match = [c for c in comps if c.contains(r0)]
        if not match:
            raise InvalidParams(f"base point r0={r0} does not lie where Delta > 0")
        comp = match[0]
        object.__setattr__(self, "r0", float(r0))
        object.__setattr__(self, "_quartic", quartic)
        object.__setattr__(self, "_domain", intervals)
        object.__setattr__(self, "_comp", comp)
        object.__setattr__(self, "_integrator", ProfileIntegrator(quartic, comp, float(r0)))

    @property
    def quartic(self) -> EvenQuartic:
        return self._quartic

    @property
    def boundary_kinds(self) -> tuple[str, str]:
        return (self._comp.lo.kind, self._comp.hi.kind)

    def maximal_domain(self) -> list[Interval]:
        return list(self._domain)

    def component(self) -> Interval:
        return Interval(self._comp.lo.value, self._comp.hi.value)

    def in_domain(self, p1: float) -> bool:
        return self._comp.contains(p1)

    def delta(self, s):
        q = self._quartic(s)
        if np.any(q <= 0):
            raise OutOfDomain("Delta is not positive at the requested abscissa")
        return np.sqrt(q)

    def integrals(self, r: float, tol: float | None = None) -> tuple[float, float]:
        return self._integrator(r, tol)

    def _profile_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def position(self, p1, p2) -> np.ndarray:
        r, theta = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        self.check_domain(np.unique(r))
        e0, e2 = self._profile_vectors()
        uniq, inv = np.unique(r, return_inverse=True)
        j = np.array([self._integrator(float(v)) for v in uniq]).reshape(-1, 2)
        j0 = j[inv.reshape(r.shape), 0]
        j2 = j[inv.reshape(r.shape), 1]
        circ = _circle(self.circle_kind, theta, 0)[0]
        return j0[..., None] * e0 + j2[..., None] * e2 + r[..., None] * circ

    def derivatives(self, p1, p2, order: int = 1):
        r, theta = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        self.check_domain(np.unique(r))
        e0, e2 = self._profile_vectors()
        d = np.sqrt(self._quartic(r))[..., None]
        rr = r[..., None]
        circ = _circle(self.circle_kind, theta, 2)
        x1 = e0 / d + e2 * rr**2 / d + circ[0]
        x2 = rr * circ[1]
        if order == 1:
            return x1, x2
        dd = (self._quartic.derivative(r)[..., None]) / (2.0 * d)
        x11 = -e0 * dd / d**2 + e2 * (2.0 * rr / d - rr**2 * dd / d**2)
        x11 = np.broadcast_to(x11, x1.shape).copy()
        x12 = circ[1]
        x22 = rr * circ[2]
        return x1, x2, x11, x12, x22

    def default_window(self):
        return (_window_in(self.component()), self._p2_window)


def _default_base_point(intervals: list[Interval]) -> float:
    for iv in intervals:
        if iv.contains(0.0):
            return 0.0
    positive = [iv for iv in intervals if iv.hi > 0]
    iv = positive[0] if positive else intervals[-1]
    if iv.bounded:
        return 0.5 * (iv.lo + iv.hi)
    if math.isfinite(iv.lo):
        return iv.lo + 1.0
    return iv.hi - 1.0


@dataclass(frozen=True)
class EuclideanGeneral(IntegralFamily):
    """General type foliated by Euclidean circles, Delta^2 = a^2 s^4 + b s^2 + 1."""

    a: float
    b: float
    r0: float | None = None

    key: ClassVar[str] = "euclidean-general"
    circle_kind: ClassVar[str] = "euclid"
    periodic: ClassVar[bool] = True
    _p2_window: ClassVar[tuple[float, float]] = (0.0, TWO_PI)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidParams("a and b must be finite")
        if not self.a > 0:
            raise InvalidParams(f"a > 0 is required (non-rotational), got a={self.a}")
        self._setup(EvenQuartic(self.a**2, self.b, 1.0), self.r0)

    def _profile_vectors(self):
        return np.array([0.0, 0.0, 1.0]), np.array([self.a, 0.0, 0.0])

    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "r0": self.r0}


class Variant(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class HyperbolaGeneral(IntegralFamily):
    """General type foliated by hyperbolas.

    Type I:  Delta^2 = (a^2 - b^2) s^4 + 2 delta s^2 - 1
    Type II: Delta^2 = (b^2 - a^2) s^4 - 2 delta s^2 + 1
    """

    variant: Variant
    a: float
    b: float
    delta: float
    r0: float | None = None

    circle_kind: ClassVar[str] = "hyperbola"
    _p2_window: ClassVar[tuple[float, float]] = (-3.0, 3.0)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not all(math.isfinite(v) for v in (self.a, self.b, self.delta)):
            raise InvalidParams("a, b and delta must be finite")
        if self.a == 0 and self.b == 0:
            raise InvalidParams("(a, b) != (0, 0) is required (non-rotational)")
        a2b2 = self.a**2 - self.b**2
        if self.variant is Variant.TYPE_I:
            q = EvenQuartic(a2b2, 2.0 * self.delta, -1.0)
        else:
            q = EvenQuartic(-a2b2, -2.0 * self.delta, 1.0)
        self._setup(q, self.r0)

    @property
    def key(self) -> str:  # type: ignore[override]
        return "hyperbola-i" if self.variant is Variant.TYPE_I else "hyperbola-ii"

    @property
    def circle_kind(self) -> str:  # type: ignore[override]
        return "hyperbola-i" if self.variant is Variant.TYPE_I else "hyperbola-ii"

    @property
    def c(self) -> float | None:
        """sqrt(b^2 - a^2) when it is real."""
        d = self.b**2 - self.a**2
        return math.sqrt(d) if d >= 0 else None

    def _profile_vectors(self):
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, self.a, self.b])

    def params(self) -> dict:
        return {"variant": self.variant.value, "a": self.a, "b": self.b,
                "delta": self.delta, "r0": self.r0}


class SingularCircleFamily(SurfaceFamily):
    """X(u, theta) = u * L + R * circle(theta), defined for all real u."""

    p1_name: ClassVar[str] = "u"
    circle_kind: ClassVar[str]

    def _line_and_radius(self) -> tuple[np.ndarray, float]:
        raise NotImplementedError

    def maximal_domain(self) -> list[Interval]:
        return [Interval(-math.inf, math.inf)]

    def in_domain(self, p1: float) -> bool:
        return math.isfinite(p1)

    def position(self, p1, p2):
        u, theta = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        line, rad = self._line_and_radius()
        return u[..., None] * line + rad * _circle(self.circle_kind, theta, 0)[0]

    def derivatives(self, p1, p2, order: int = 1):
        u, theta = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        line, rad = self._line_and_radius()
        circ = _circle(self.circle_kind, theta, 2)
        x1 = np.broadcast_to(line, circ[0].shape).copy()
        x2 = rad * circ[1]
        if order == 1:
            return x1, x2
        zero = np.zeros_like(x1)
        return x1, x2, zero, zero.copy(), rad * circ[2]

    def default_window(self):
        return ((-3.0, 3.0), self._p2_window)


@dataclass(frozen=True)
class EuclideanSingular(SingularCircleFamily):
    """Constant radius 1/sqrt(a) circles sliding along (1, 0, 1)."""

    a: float

    key: ClassVar[str] = "euclidean-singular"
    circle_kind: ClassVar[str] = "euclid"
    periodic: ClassVar[bool] = True
    _p2_window: ClassVar[tuple[float, float]] = (0.0, TWO_PI)

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise InvalidParams(f"a > 0 is required, got a={self.a}")

    def _line_and_radius(self):
        return np.array([1.0, 0.0, 1.0]), 1.0 / math.sqrt(self.a)

    def params(self) -> dict:
        return {"a": self.a}


@dataclass(frozen=True)
class HyperbolaSingular(SingularCircleFamily):
    """Constant radius 1/sqrt(c) hyperbolas sliding along (c, a, b)/c."""

    variant: Variant
    a: float
    b: float

    _p2_window: ClassVar[tuple[float, float]] = (-3.0, 3.0)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidParams("a and b must be finite")
        if not self.b**2 - self.a**2 > 0:
            raise InvalidParams(f"-a^2 + b^2 > 0 is required, got a={self.a}, b={self.b}")

    @property
    def key(self) -> str:  # type: ignore[override]
        return "hyperbola-i-singular" if self.variant is Variant.TYPE_I else "hyperbola-ii-singular"

    @property
    def circle_kind(self) -> str:  # type: ignore[override]
        return "hyperbola-i" if self.variant is Variant.TYPE_I else "hyperbola-ii"

    @property
    def c(self) -> float:
        return math.sqrt(self.b**2 - self.a**2)

    def _line_and_radius(self):
        c = self.c
        return np.array([c, self.a, self.b]) / c, 1.0 / math.sqrt(c)

    def params(self) -> dict:
        return {"variant": self.variant.value, "a": self.a, "b": self.b}


# ---------------------------------------------------------------- parabolas

class ParabolaCase(str, enum.Enum):
    GEN_ZERO = "gen-zero"
    GEN_POS = "gen-pos"
    GEN_NEG = "gen-neg"
    SINGULAR = "singular"


@dataclass(frozen=True)
class RFG:
    """r, f, g and their first two u-derivatives, as arrays."""

    r: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    f: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    g: np.ndarray
    g1: np.ndarray
    g2: np.ndarray


class ParabolicFamily(SurfaceFamily):
    """X(u, v) = (f + v, g + u + r v^2/2, g - u + r v^2/2)."""

    p1_name: ClassVar[str] = "u"
    p2_name: ClassVar[str] = "v"

    def rfg(self, u) -> RFG:
        raise NotImplementedError

    def position(self, p1, p2):
        u, v = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        self.check_domain(np.unique(u))
        q = self.rfg(u)
        half = q.r * v * v / 2.0
        return _stack(q.f + v, q.g + u + half, q.g - u + half)

    def derivatives(self, p1, p2, order: int = 1):
        u, v = np.broadcast_arrays(np.asarray(p1, float), np.asarray(p2, float))
        self.check_domain(np.unique(u))
        q = self.rfg(u)
        vv = v * v / 2.0
        x1 = _stack(q.f1, q.g1 + 1.0 + q.r1 * vv, q.g1 - 1.0 + q.r1 * vv)
        x2 = _stack(np.ones_like(v), q.r * v, q.r * v)
        if order == 1:
            return x1, x2
        x11 = _stack(q.f2, q.g2 + q.r2 * vv, q.g2 + q.r2 * vv)
        x12 = _stack(np.zeros_like(v), q.r1 * v, q.r1 * v)
        x22 = _stack(np.zeros_like(v), q.r, q.r)
        return x1, x2, x11, x12, x22


@dataclass(frozen=True)
class Parabola(ParabolicFamily):
    """Surfaces foliated by parabolas in lightlike planes.

    ``case`` selects the closed form: ``gen-zero`` (the a = 0 branch of
    r' = 2r^2 + a), ``gen-pos`` (a > 0), ``gen-neg`` (a < 0) or ``singular``
    (constant r, a < 0). ``allow_rotational`` admits b = 0 in ``gen-zero``,
    which for c = 0 is the rotational surface used as a control.
    """

    case: ParabolaCase
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    p: float = 0.0
    allow_rotational: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "case", ParabolaCase(self.case))
        if not all(math.isfinite(x) for x in (self.a, self.b, self.c, self.p)):
            raise InvalidParams("a, b, c and p must be finite")
        case = self.case
        if case is ParabolaCase.GEN_ZERO:
            object.__setattr__(self, "a", 0.0)
            if self.b == 0 and not self.allow_rotational:
                raise InvalidParams("b != 0 is required for gen-zero (non-rotational)")
            g1 = Polynomial([self.p, -self.b**2 * self.c, self.b**2]) * Polynomial([self.c, -2.0]) ** 2
            object.__setattr__(self, "_gpoly", (g1.integ(lbnd=0.0), g1, g1.deriv()))
        elif case is ParabolaCase.GEN_POS and not self.a > 0:
            raise InvalidParams(f"a > 0 is required for gen-pos, got a={self.a}")
        elif case in (ParabolaCase.GEN_NEG, ParabolaCase.SINGULAR) and not self.a < 0:
            raise InvalidParams(f"a < 0 is required for {case.value}, got a={self.a}")

    @property
    def key(self) -> str:  # type: ignore[override]
        return f"parabola-{self.case.value}"

    @property
    def k(self) -> float:
        return math.sqrt(2.0 * abs(self.a))

    def maximal_domain(self, span: tuple[float, float] = (-10.0, 10.0)) -> list[Interval]:
        """Components of the domain; for gen-pos (infinitely many) those meeting ``span``."""
        case = self.case
        if case is ParabolaCase.SINGULAR:
            return [Interval(-math.inf, math.inf)]
        if case is ParabolaCase.GEN_ZERO:
            return [Interval(-math.inf, self.c / 2.0), Interval(self.c / 2.0, math.inf)]
        if case is ParabolaCase.GEN_NEG:
            return [Interval(-math.inf, self.c), Interval(self.c, math.inf)]
        period = math.pi / (2.0 * self.k)
        n_lo = math.floor((span[0] + self.c) / period)
        n_hi = math.ceil((span[1] + self.c) / period)
        return [Interval(n * period - self.c, (n + 1) * period - self.c) for n in range(n_lo, n_hi)]

    def in_domain(self, p1: float) -> bool:
        if not math.isfinite(p1):
            return False
        case = self.case
        if case is ParabolaCase.SINGULAR:
            return True
        if case is ParabolaCase.GEN_ZERO:
            return p1 != self.c / 2.0
        if case is ParabolaCase.GEN_NEG:
            return p1 != self.c
        phase = self.k * (p1 + self.c) / (math.pi / 2.0)
        return abs(phase - round(phase)) > 1e-14 * max(1.0, abs(phase))

    def component(self) -> Interval:
        case = self.case
        if case is ParabolaCase.GEN_ZERO:
            return Interval(-math.inf, self.c / 2.0)
        if case is ParabolaCase.GEN_NEG:
            return Interval(-math.inf, self.c)
        if case is ParabolaCase.GEN_POS:
            return Interval(-self.c, -self.c + math.pi / (2.0 * self.k))
        return Interval(-math.inf, math.inf)

    def default_window(self):
        comp = self.component()
        if comp.bounded:
            m = 0.1 * (comp.hi - comp.lo)
            uw = (comp.lo + m, comp.hi - m)
        elif math.isinf(comp.hi):
            uw = (-3.0, 3.0)
        else:
            uw = (comp.hi - 3.0, comp.hi - 0.05)
        return uw, self._v_window(uw)

    def _v_window(self, uw: tuple[float, float]) -> tuple[float, float]:
        """[-3, 3], widened to keep 3 units around the vertex v = b / (a r) of EG - F^2.

        Only for a < 0, where r is bounded by sqrt(-a/2) and the vertex can stay
        outside [-3, 3] on every leaf; for a >= 0, r sweeps (0, inf) across the
        component, so the vertex crosses [-3, 3] anyway, and a wider window only
        adds points whose tangent planes fall inside the relative lightlike band.
        """
        if self.a >= 0 or self.b == 0:
            return (-3.0, 3.0)
        vs = self.b / (self.a * self.rfg(np.linspace(uw[0], uw[1], 33)).r)
        lo, hi = np.quantile(vs, [0.1, 0.9])
        return (max(-V_WINDOW_MAX, min(-3.0, float(lo) - 3.0)),
                min(V_WINDOW_MAX, max(3.0, float(hi) + 3.0)))

    def rfg(self, u) -> RFG:
        u = np.asarray(u, dtype=float)
        a, b, c, p = self.a, self.b, self.c, self.p
        case = self.case
        if case is ParabolaCase.GEN_ZERO:
            w = c - 2.0 * u
            g, g1, g2 = self._gpoly
            return RFG(1.0 / w, 2.0 / w**2, 8.0 / w**3,
                       (4.0 * b / 3.0) * u**3 - 2.0 * b * c * u**2 + b * c * c * u,
                       b * w**2, -4.0 * b * w,
                       g(u), g1(u), g2(u))
        k = self.k
        if case is ParabolaCase.GEN_POS:
            phi = k * (u + c)
            tan, cot = np.tan(phi), 1.0 / np.tan(phi)
            sec2, csc2 = 1.0 + tan**2, 1.0 + cot**2
            rad = math.sqrt(a / 2.0)
            fc = math.sqrt(2.0) * b / a**1.5
            gc = b * b / (math.sqrt(2.0) * a**2.5)
            return RFG(
                rad * tan, rad * k * sec2, rad * k * k * 2.0 * sec2 * tan,
                -fc * cot - (2.0 * b / a) * (u + c),
                fc * k * csc2 - 2.0 * b / a,
                -2.0 * fc * k * k * csc2 * cot,
                -gc * cot + p / (4.0 * k) * np.sin(2.0 * phi) + (p / 2.0 - b * b / a**2) * (u + c),
                gc * k * csc2 + (p / 2.0) * np.cos(2.0 * phi) + p / 2.0 - b * b / a**2,
                -2.0 * gc * k * k * csc2 * cot - p * k * np.sin(2.0 * phi),
            )
        if case is ParabolaCase.GEN_NEG:
            psi = k * (c - u)
            th = np.tanh(psi)
            coth = 1.0 / th
            sech2, csch2 = 1.0 - th**2, coth**2 - 1.0
            rad = math.sqrt(-a / 2.0)
            fc = math.sqrt(2.0) * b / (a * math.sqrt(-a))
            gc = b * b / (a * a * k)
            return RFG(
                rad * th, -rad * k * sech2, -2.0 * rad * k * k * sech2 * th,
                -fc * coth - (2.0 * b / a) * (u + c),
                -fc * k * csch2 - 2.0 * b / a,
                -2.0 * fc * k * k * csch2 * coth,
                -gc * coth - p / (4.0 * k) * np.sinh(2.0 * psi) + (b * b / a**2 - p / 2.0) * (c - u),
                -gc * k * csch2 + (p / 2.0) * np.cosh(2.0 * psi) - b * b / a**2 + p / 2.0,
                -2.0 * gc * k * k * csch2 * coth - p * k * np.sinh(2.0 * psi),
            )
        e = p * np.exp(-2.0 * k * u)
        zero = np.zeros_like(u)
        return RFG(
            zero + math.sqrt(-a / 2.0), zero, zero.copy(),
            -(2.0 * b / a) * u, zero - 2.0 * b / a, zero.copy(),
            e - (b * b / a**2) * u, -2.0 * k * e - b * b / a**2, 4.0 * k * k * e,
        )

    def params(self) -> dict:
        return {"case": self.case.value, "a": self.a, "b": self.b, "c": self.c, "p": self.p}


# ---------------------------------------------------------------- isometric copies

@dataclass(frozen=True)
class Transformed(SurfaceFamily):
    """The image of ``base`` under an ambient isometry, same parameters."""

    base: SurfaceFamily
    iso: Isometry

    @property
    def key(self) -> str:  # type: ignore[override]
        return self.base.key

    @property
    def periodic(self) -> bool:  # type: ignore[override]
        return self.base.periodic

    @property
    def p1_name(self) -> str:  # type: ignore[override]
        return self.base.p1_name

    @property
    def p2_name(self) -> str:  # type: ignore[override]
        return self.base.p2_name

    def maximal_domain(self) -> list[Interval]:
        return self.base.maximal_domain()

    def component(self) -> Interval:
        return self.base.component()

    def in_domain(self, p1: float) -> bool:
        return self.base.in_domain(p1)

    def default_window(self):
        return self.base.default_window()

    def position(self, p1, p2) -> np.ndarray:
        return self.iso.apply(self.base.position(p1, p2))

    def derivatives(self, p1, p2, order: int = 1):
        return tuple(self.iso.apply_vector(d) for d in self.base.derivatives(p1, p2, order))

    def params(self) -> dict:
        return self.base.params()


# ---------------------------------------------------------------- module API

def maximal_domain(f: SurfaceFamily) -> list[Interval]:
    return f.maximal_domain()


def profile_delta(f: SurfaceFamily, s: float) -> float:
    if not isinstance(f, IntegralFamily):
        raise InvalidParams(f"{f.key} has no integral profile")
    if not f.in_domain(s) and not any(iv.contains(s) for iv in f.maximal_domain()):
        raise OutOfDomain(f"s={s} lies outside {{Delta > 0}}")
    q = float(f.quartic(s))
    if q <= 0:
        raise OutOfDomain(f"s={s} lies outside {{Delta > 0}}")
    return math.sqrt(q)


def profile_integrals(f: SurfaceFamily, r: float, tol: float = 1e-10) -> tuple[float, float, float]:
    """(int 1/Delta, int a s^2/Delta, int b s^2/Delta) from the base point to r."""
    if not isinstance(f, IntegralFamily):
        raise InvalidParams(f"{f.key} has no integral profile")
    if not tol > 0:
        raise InvalidParams("tol must be positive")
    j0, j2 = f.integrals(r, tol)
    return j0, f.a * j2, f.b * j2


def evaluate(f: SurfaceFamily, p1: float, p2: float) -> Vector3L:
    return Vector3L.of(f.position(float(p1), float(p2)))


def partials(f: SurfaceFamily, p1: float, p2: float, order: int = 1) -> tuple[Vector3L, ...]:
    if order not in (1, 2):
        raise InvalidParams("order must be 1 or 2")
    return tuple(Vector3L.of(x) for x in f.derivatives(float(p1), float(p2), order))


def parabola_rfg(t: Parabola, u: float) -> tuple[float, float, float, float]:
    """(r, f, g, g') at u."""
    if not t.in_domain(u):
        if t.case is ParabolaCase.GEN_NEG and u == t.c:
            raise ZeroRadius(f"r vanishes at u={u}")
        raise OutOfDomain(f"u={u} is outside the domain of {t.key}")
    q = t.rfg(u)
    return float(q.r), float(q.f), float(q.g), float(q.g1)


ODE_STEP = 1e-4


def ode_residual(f: SurfaceFamily, at: float) -> float:
    """Max absolute residual of the ODE system the family's profile solves.

    Integral families are checked in the arc parameter u = int 1/Delta, so
    dr/du = Delta(r) and d^2r/du^2 = (Delta^2)'(r)/2.
    """
    from .entire_graph import EntireGraph

    if isinstance(f, Transformed):
        return ode_residual(f.base, at)
    at = float(at)
    for off in (-2 * ODE_STEP, 2 * ODE_STEP):
        if not f.in_domain(at + off) or not f.in_domain(at):
            raise OutOfDomain(f"{at} is not at least {2 * ODE_STEP} inside the domain")
    if isinstance(f, EuclideanGeneral):
        r = at
        r1sq = float(f.quartic(r))
        r2 = 0.5 * float(f.quartic.derivative(r))
        res = [f.a**2 * r**4 - 1.0 - r * r2 + r1sq]
    elif isinstance(f, EuclideanSingular):
        r = 1.0 / math.sqrt(f.a)
        res = [f.a**2 * r**4 - 1.0, 1.0 - f.a * r * r]
    elif isinstance(f, HyperbolaGeneral):
        r = at
        r1sq = float(f.quartic(r))
        r2 = 0.5 * float(f.quartic.derivative(r))
        ab = f.a**2 - f.b**2
        if f.variant is Variant.TYPE_I:
            res = [1.0 + ab * r**4 + r1sq - r * r2]
        else:
            res = [1.0 + ab * r**4 - r1sq + r * r2]
    elif isinstance(f, HyperbolaSingular):
        c = f.c
        r = 1.0 / math.sqrt(c)
        ab = f.a**2 - f.b**2
        eq = 1.0 + ab * r**4
        res = [eq, f.a / c - f.a * r * r, f.b / c - f.b * r * r]
    elif isinstance(f, (Parabola, EntireGraph)):
        q = f.rfg(at)
        a, b = f.a, f.b
        r = float(q.r)
        res = [float(q.r1) - 2.0 * r * r - a,
               r * r * float(q.f1) - b,
               b * b / r**3 + 4.0 * r * float(q.g1) + float(q.g2)]
    else:
        raise InvalidParams(f"no ODE system for {type(f).__name__}")
    return float(max(abs(x) for x in res))
