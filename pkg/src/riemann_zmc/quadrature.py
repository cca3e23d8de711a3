"""Quadrature for the profile integrals of the integral-type families.

The integrands are ``1/Delta(s)`` and ``s^2/Delta(s)`` where
``Delta(s)^2 = A s^4 + B s^2 + C`` is an even quartic. Near a simple root
``rho`` of ``Delta^2`` the integrand behaves like ``1/sqrt|s - rho|``; there the
substitution ``s = rho + sigma*w^2`` makes it smooth in ``w``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OutOfDomain, QuadratureFailure

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_DISC_SNAP = 1e-12


def adaptive_gauss(fn, a: float, b: float, tol: float = 1e-13, max_depth: int = 60) -> np.ndarray:
    """Adaptive composite 20-point Gauss-Legendre with interval bisection.

    ``fn`` maps an array of abscissae to an array of shape ``(k, n)``; the
    result has shape ``(k,)``. Subintervals are accepted when the halves
    agree with the whole to ``tol`` relative to the global magnitude.
    """
    if a == b:
        return np.zeros(np.asarray(fn(np.array([a]))).shape[0])

    def rule(lo, hi):
        half = 0.5 * (hi - lo)
        x = 0.5 * (hi + lo) + half * _GL_NODES
        return np.asarray(fn(x)) @ _GL_WEIGHTS * half

    total_len = abs(b - a)
    whole = rule(a, b)
    scale = max(float(np.abs(whole).max()), 1e-300)
    result = np.zeros_like(whole)
    stack = [(a, b, whole, 0)]
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = rule(lo, mid), rule(mid, hi)
        fine = left + right
        scale = max(scale, float(np.abs(fine).max()))
        err = float(np.abs(fine - est).max())
        if err <= tol * scale * max(abs(hi - lo) / total_len, 1e-3) or err <= 1e-300:
            result += fine
        elif depth >= max_depth or mid in (lo, hi):
            raise QuadratureFailure(
                f"tolerance {tol:g} not reached on [{lo!r}, {hi!r}] (error {err:.3g})"
            )
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return result


@dataclass(frozen=True)
class Boundary:
    """End of a positivity component of Delta^2."""

    value: float
    kind: str  # "infinite" | "simple" | "double"


@dataclass(frozen=True)
class Component:
    lo: Boundary
    hi: Boundary

    def contains(self, s: float) -> bool:
        return self.lo.value < s < self.hi.value

    @property
    def width(self) -> float:
        return self.hi.value - self.lo.value


class EvenQuartic:
    """``Q(s) = A s^4 + B s^2 + C`` handled as a quadratic in ``W = s^2``.

    Roots are snapped to a double root when the discriminant vanishes to
    relative precision 1e-12, so parameter choices like ``b = -2a`` or
    ``delta = sqrt(b^2 - a^2)`` behave as the exact tangency they describe.
    """

    def __init__(self, A: float, B: float, C: float):
        self.A, self.B, self.C = float(A), float(B), float(C)
        A, B, C = self.A, self.B, self.C
        # (W_root, multiplicity)
        roots: list[tuple[float, int]] = []
        if A != 0.0:
            disc = B * B - 4.0 * A * C
            if abs(disc) <= _DISC_SNAP * (B * B + abs(4.0 * A * C)):
                roots = [(-B / (2.0 * A), 2)]
            elif disc > 0:
                q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
                w1, w2 = sorted([q / A, C / q] if q != 0 else [0.0, -B / A])
                roots = [(w1, 1), (w2, 1)]
        elif B != 0.0:
            roots = [(-C / B, 1)]
        self.lead = A if A != 0.0 else B
        self.w_roots = roots

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if not self.w_roots:
            s2 = s * s
            return (self.A * s2 + self.B) * s2 + self.C
        out = np.full_like(s, self.lead)
        for w, mult in self.w_roots:
            out = out * self._factor(s, w) ** mult
        return out

    @staticmethod
    def _factor(s, w):
        if w > 0:
            rho = math.sqrt(w)
            return (s - rho) * (s + rho)
        return s * s - w

    def derivative(self, s):
        s = np.asarray(s, dtype=float)
        return 4.0 * self.A * s**3 + 2.0 * self.B * s

    def second_derivative(self, s):
        s = np.asarray(s, dtype=float)
        return 12.0 * self.A * s**2 + 2.0 * self.B

    def reduced(self, s, rho: float, sigma: float):
        """``Q(s) / (s - rho) * sigma`` for a simple root ``rho``; stays positive."""
        s = np.asarray(s, dtype=float)
        out = np.full_like(s, self.lead) * sigma * (s + rho)
        skipped = False
        for w, mult in self.w_roots:
            if not skipped and mult == 1 and w > 0 and math.isclose(math.sqrt(w), abs(rho)):
                skipped = True
                continue
            out = out * self._factor(s, w) ** mult
        return out

    def components(self) -> list[Component]:
        """Connected components of {s : Q(s) > 0}, left to right."""
        points: dict[float, str] = {}
        for w, mult in self.w_roots:
            if w > 0:
                rho = math.sqrt(w)
                kind = "simple" if mult == 1 else "double"
                points[-rho] = kind
                points[rho] = kind
            elif w == 0:
                points[0.0] = "double"
        edges = sorted(points)
        bounds = [Boundary(-math.inf, "infinite")]
        bounds += [Boundary(e, points[e]) for e in edges]
        bounds.append(Boundary(math.inf, "infinite"))
        comps = []
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            if math.isinf(lo.value) and math.isinf(hi.value):
                probe = 0.0
            elif math.isinf(lo.value):
                probe = hi.value - 1.0
            elif math.isinf(hi.value):
                probe = lo.value + 1.0
            else:
                probe = 0.5 * (lo.value + hi.value)
            if float(self(probe)) > 0:
                comps.append(Component(lo, hi))
        return comps


class ProfileIntegrator:
    """Cumulative integrals ``J0 = int 1/Delta`` and ``J2 = int s^2/Delta``
    from a base point ``r0`` inside one component.

    Checkpoints on a uniform grid around ``r0`` are integrated eagerly at
    construction; a query integrates only from the nearest checkpoint.
    """

    def __init__(self, quartic: EvenQuartic, component: Component, r0: float,
                 tol: float = 1e-13, step: float = 0.25, max_checkpoints: int = 256):
        if not component.contains(r0):
            raise OutOfDomain(f"base point {r0} outside its component")
        self.q = quartic
        self.comp = component
        self.r0 = float(r0)
        self.tol = tol
        lo, hi = component.lo.value, component.hi.value
        if math.isfinite(lo) and math.isfinite(hi):
            step = min(step, component.width / 16.0)
        self.step = step
        self.guard = step
        up, down = [self.r0], [self.r0]
        while len(up) <= max_checkpoints and up[-1] + step < hi - self.guard:
            up.append(self.r0 + len(up) * step)
        while len(down) <= max_checkpoints and down[-1] - step > lo + self.guard:
            down.append(self.r0 - len(down) * step)
        self._up = np.array(up)
        self._down = np.array(down)
        self._cum_up = self._accumulate(self._up)
        self._cum_down = self._accumulate(self._down)
        self._cached = lru_cache(maxsize=16384)(self._integral)

    def _integrand(self, s):
        d = np.sqrt(self.q(s))
        return np.stack([1.0 / d, s * s / d])

    def _accumulate(self, pts: np.ndarray) -> np.ndarray:
        cum = np.zeros((len(pts), 2))
        for i in range(1, len(pts)):
            cum[i] = cum[i - 1] + adaptive_gauss(self._integrand, pts[i - 1], pts[i], self.tol)
        return cum

    def _piece(self, a: float, b: float, tol: float) -> np.ndarray:
        """Integral from checkpoint ``a`` to ``b``; substitutes near a simple root."""
        bound = self.comp.hi if b > a else self.comp.lo
        if bound.kind == "simple" and abs(bound.value - b) < self.guard:
            rho = bound.value
            sigma = -1.0 if b > a else 1.0

            def fw(w):
                s = rho + sigma * w * w
                h = np.sqrt(self.q.reduced(s, rho, sigma))
                return np.stack([2.0 * sigma / h, 2.0 * sigma * s * s / h])

            wa = math.sqrt(sigma * (a - rho))
            wb = math.sqrt(max(sigma * (b - rho), 0.0))
            return adaptive_gauss(fw, wa, wb, tol)
        return adaptive_gauss(self._integrand, a, b, tol)

    def _integral(self, r: float, tol: float) -> tuple[float, float]:
        if r >= self.r0:
            pts, cum = self._up, self._cum_up
            k = min(int((r - self.r0) / self.step), len(pts) - 1)
        else:
            pts, cum = self._down, self._cum_down
            k = min(int((self.r0 - r) / self.step), len(pts) - 1)
        val = cum[k] + self._piece(float(pts[k]), r, tol)
        return float(val[0]), float(val[1])

    def __call__(self, r: float, tol: float | None = None) -> tuple[float, float]:
        r = float(r)
        if not self.comp.contains(r):
            raise OutOfDomain(f"r={r} is not in the component of r0={self.r0}")
        return self._cached(r, self.tol if tol is None else min(tol, 1e-10))
