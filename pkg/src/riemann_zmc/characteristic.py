"""Characteristic of a ZMC surface along a lightlike line.

After an isometry carries the line onto {(0, s, s)}, write the surface near
it with a transverse parameter w. The function

    alpha(y) = (t_ww - y_ww) / x_w^2     (evaluated on the line)

does not depend on the choice of w, and it satisfies the Riccati equation
alpha' + alpha^2 + mu = 0 for a constant mu, the characteristic. The sign of
mu and the boundedness of alpha give one of six local types:

==============  =====================  ========
type            alpha                  mu
==============  =====================  ========
alpha_plus      -k tan(k y + c)        k^2
alpha_0_I       0                      0
alpha_0_II      1 / (y + c)            0
alpha_minus_I   k tanh(k y + c)        -k^2
alpha_minus_II  k coth(k y + c)        -k^2
alpha_minus_III +-k                    -k^2
==============  =====================  ========
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .classify import LightlikeLocus, LocusKind, lightlike_locus_analytic
from .errors import (
    DegenerateTransverse,
    Inconsistent,
    InvalidParams,
    NoLightlikePart,
    NonMonotoneY,
    NotALine,
    TooFewSamples,
)
from .families import SurfaceFamily
from .minkowski import Isometry, null_normalizing_isometry

CONST_SPREAD = 1e-6
MU_ZERO = 1e-6
BOUND_RTOL = 1e-6


class AlphaType(str, enum.Enum):
    ALPHA_PLUS = "alpha_plus"
    ALPHA_0_I = "alpha_0_I"
    ALPHA_0_II = "alpha_0_II"
    ALPHA_MINUS_I = "alpha_minus_I"
    ALPHA_MINUS_II = "alpha_minus_II"
    ALPHA_MINUS_III = "alpha_minus_III"


@dataclass(frozen=True)
class AlphaSamples:
    """alpha against y, ascending in y.

    ``slope`` optionally carries d(alpha)/dy measured at each sample by a
    local symmetric stencil; ``mu_from_alpha`` prefers it over differences
    between neighbouring samples.
    """

    y: np.ndarray
    alpha: np.ndarray
    slope: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.y)

    def pairs(self) -> list[list[float]]:
        return [[float(a), float(b)] for a, b in zip(self.y, self.alpha)]


def _line_samples(locus: LightlikeLocus, n: int) -> tuple[np.ndarray, np.ndarray]:
    if locus.curve is not None and locus.p1_range is not None:
        p1 = np.linspace(locus.p1_range[0], locus.p1_range[1], n)
        return p1, np.asarray(locus.curve(p1), dtype=float)
    return locus.params[:, 0], locus.params[:, 1]


def normalizing_isometry(locus: LightlikeLocus) -> Isometry:
    if locus.kind is not LocusKind.LINE or locus.direction is None:
        raise NotALine(f"locus of kind {locus.kind.value} is not a straight line")
    return null_normalizing_isometry(locus.direction, locus.points[0])


def _alpha_and_y(f: SurfaceFamily, iso: Isometry, p1, p2):
    _, x2, _, _, x22 = f.derivatives(p1, p2, 2)
    a2 = iso.apply_vector(x2)
    a22 = iso.apply_vector(x22)
    y = iso.apply(f.position(p1, p2))[..., 1]
    xw = a2[..., 0]
    scale = np.linalg.norm(x2, axis=-1)
    ok = np.abs(xw) > 1e-12 * np.maximum(scale, 1e-300)
    alpha = np.where(ok, (a22[..., 2] - a22[..., 1]) / np.where(ok, xw, 1.0) ** 2, np.nan)
    return y, alpha, ok


def _richardson(fn, x, h):
    """Central difference of fn at x with one Richardson step (error O(h^4))."""
    d1 = (fn(x + h) - fn(x - h)) / (2 * h)
    d2 = (fn(x + h / 2) - fn(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def alpha_along_line(f: SurfaceFamily, locus: LightlikeLocus, n: int = 101,
                     iso: Isometry | None = None, step: float = 1e-3) -> AlphaSamples:
    """Sample alpha(y) along a straight lightlike locus.

    For analytic loci the slope d(alpha)/dy is measured at each sample:
    d(alpha)/dp1 by an extrapolated central difference with step
    ``step * max(|p1|, 0.01)``, and dy/dp1 exactly from X1 + X2 * dp2/dp1.
    """
    if n < 3:
        raise TooFewSamples("need at least 3 samples along the line")
    iso = iso or normalizing_isometry(locus)
    p1, p2 = _line_samples(locus, n)
    y, alpha, ok = _alpha_and_y(f, iso, p1, p2)
    if not ok.any():
        raise DegenerateTransverse("transverse derivative has no x-component at any sample")
    slope = None
    if locus.curve is not None:
        curve = locus.curve
        h = step * np.maximum(np.abs(p1), 1e-2)
        dalpha = _richardson(lambda q: _alpha_and_y(f, iso, q, curve(q))[1], p1, h)
        dcurve = _richardson(lambda q: np.asarray(curve(q), dtype=float), p1, h)
        x1, x2 = f.derivatives(p1, p2, 1)
        dy = iso.apply_vector(x1 + x2 * dcurve[:, None])[:, 1]
        ok &= np.isfinite(dalpha)
        slope = (dalpha / dy)[ok]
    y, alpha = y[ok], alpha[ok]
    order = np.argsort(y, kind="stable")
    return AlphaSamples(y[order], alpha[order], None if slope is None else slope[order])


def mu_from_alpha(samples: AlphaSamples) -> tuple[float, float]:
    """(mu, constancy residual) from alpha' + alpha^2 + mu = 0."""
    y, alpha = np.asarray(samples.y, dtype=float), np.asarray(samples.alpha, dtype=float)
    if len(y) < 5:
        raise TooFewSamples(f"need at least 5 samples, got {len(y)}")
    dy = np.diff(y)
    if not (np.all(dy > 0) or np.all(dy < 0)):
        raise NonMonotoneY("y is not strictly monotone along the samples")
    if samples.slope is not None:
        mus = -(np.asarray(samples.slope) + alpha**2)
    else:
        mus = -(np.gradient(alpha, y) + alpha**2)[1:-1]
    mu = float(np.median(mus))
    return mu, float(np.abs(mus - mu).max())


def classify_alpha_type(samples: AlphaSamples, mu: float) -> AlphaType:
    alpha = np.asarray(samples.alpha, dtype=float)
    if float(alpha.max() - alpha.min()) < CONST_SPREAD:
        if float(np.abs(alpha).max()) < CONST_SPREAD:
            return AlphaType.ALPHA_0_I
        if mu < -MU_ZERO:
            return AlphaType.ALPHA_MINUS_III
        raise Inconsistent(f"constant nonzero alpha requires mu = -alpha^2 < 0, got mu={mu}")
    if mu > MU_ZERO:
        return AlphaType.ALPHA_PLUS
    if mu >= -MU_ZERO:
        return AlphaType.ALPHA_0_II
    bound = math.sqrt(-mu) * (1.0 - BOUND_RTOL)
    if float(np.abs(alpha).max()) < bound:
        return AlphaType.ALPHA_MINUS_I
    return AlphaType.ALPHA_MINUS_II


def closed_form(alpha_type: AlphaType, mu: float, shift: float, y):
    """Evaluate the tabulated alpha for the given type, mu and shift c."""
    y = np.asarray(y, dtype=float)
    k = math.sqrt(abs(mu))
    if alpha_type is AlphaType.ALPHA_PLUS:
        return -k * np.tan(k * y + shift)
    if alpha_type is AlphaType.ALPHA_0_I:
        return np.zeros_like(y)
    if alpha_type is AlphaType.ALPHA_0_II:
        return 1.0 / (y + shift)
    if alpha_type is AlphaType.ALPHA_MINUS_I:
        return k * np.tanh(k * y + shift)
    if alpha_type is AlphaType.ALPHA_MINUS_II:
        return k / np.tanh(k * y + shift)
    return np.full_like(y, math.copysign(k, shift))


def fit_shift(alpha_type: AlphaType, mu: float, y_mid: float, a_mid: float) -> float:
    """The shift c matching the closed form to one sample."""
    k = math.sqrt(abs(mu))
    if alpha_type is AlphaType.ALPHA_PLUS:
        return math.atan(-a_mid / k) - k * y_mid
    if alpha_type is AlphaType.ALPHA_0_II:
        return 1.0 / a_mid - y_mid
    if alpha_type is AlphaType.ALPHA_MINUS_I:
        return math.atanh(max(-1.0, min(1.0, a_mid / k))) - k * y_mid
    if alpha_type is AlphaType.ALPHA_MINUS_II:
        return math.atanh(k / a_mid) - k * y_mid
    if alpha_type is AlphaType.ALPHA_MINUS_III:
        return math.copysign(1.0, a_mid)  # only the sign is used
    return 0.0


def closed_form_fit(samples: AlphaSamples, mu: float, alpha_type: AlphaType) -> float:
    """Max deviation from the tabulated closed form with c fitted at the middle sample."""
    y, alpha = np.asarray(samples.y), np.asarray(samples.alpha)
    mid = len(y) // 2
    shift = fit_shift(alpha_type, mu, float(y[mid]), float(alpha[mid]))
    return float(np.abs(closed_form(alpha_type, mu, shift, y) - alpha).max())


@dataclass(frozen=True)
class CharacteristicReport:
    family: str
    params: dict
    locus: str
    direction: tuple[float, float, float]
    samples: AlphaSamples
    mu: float
    mu_residual: float
    alpha_type: AlphaType
    closed_form_residual: float

    def as_dict(self, max_samples: int | None = None) -> dict:
        pairs = self.samples.pairs()
        if max_samples is not None and len(pairs) > max_samples:
            idx = np.linspace(0, len(pairs) - 1, max_samples).round().astype(int)
            pairs = [pairs[i] for i in idx]
        return {
            "family": self.family,
            "params": self.params,
            "locus": self.locus,
            "direction": list(self.direction),
            "mu": self.mu,
            "mu_residual": self.mu_residual,
            "alpha_type": self.alpha_type.value,
            "closed_form_residual": self.closed_form_residual,
            "samples": pairs,
        }


def first_line(f: SurfaceFamily) -> LightlikeLocus:
    loci = lightlike_locus_analytic(f)
    for lc in loci:
        if lc.kind is LocusKind.LINE:
            return lc
    raise NotALine(f"{f.key} has lightlike loci but none is a straight line")


def characteristic(f: SurfaceFamily, locus: LightlikeLocus | None = None, n: int = 101,
                   iso: Isometry | None = None) -> CharacteristicReport:
    """Full characteristic report along ``locus`` (default: the first analytic line)."""
    if n < 5:
        raise InvalidParams("n must be at least 5")
    locus = locus or first_line(f)
    samples = alpha_along_line(f, locus, n, iso)
    mu, res = mu_from_alpha(samples)
    kind = classify_alpha_type(samples, mu)
    fit = closed_form_fit(samples, mu, kind)
    d = locus.direction
    return CharacteristicReport(f.key, f.params(), locus.label, (d.x, d.y, d.t),
                                samples, mu, res, kind, fit)


__all__ = [
    "AlphaSamples",
    "AlphaType",
    "CharacteristicReport",
    "NoLightlikePart",
    "alpha_along_line",
    "characteristic",
    "classify_alpha_type",
    "closed_form",
    "closed_form_fit",
    "first_line",
    "mu_from_alpha",
]
