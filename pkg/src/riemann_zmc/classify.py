"""Fundamental forms, causal classification and lightlike loci.

The causal character at a parameter point is the sign of ``EG - F^2``:
positive is spacelike, negative timelike, and values inside the band
``|EG - F^2| <= 1e-9 * max(1, |X1|^2 |X2|^2)`` are lightlike.

``predict_class`` encodes the closed-form classification of each family;
``sample_class`` measures the same thing on a parameter grid and extracts the
lightlike loci, so the two can be compared.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .entire_graph import EntireGraph
from .errors import InvalidParams, LightlikePoint, NoLightlikePart, OutOfDomain, TooFewSamples
from .families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
    ParabolaCase,
    SurfaceFamily,
    TWO_PI,
    Transformed,
    Variant,
    close,
)
from .minkowski import CausalCharacter, Vector3L, cross, dot

S, T, L = CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE, CausalCharacter.LIGHTLIKE
CHARACTER_ORDER = (S, T, L)

BAND_TAU = 1e-9
LINE_MAX = 1e-8
CURVE_MIN = 1e-4
BISECT_ITERS = 60


def sorted_characters(chars) -> list[CausalCharacter]:
    return [c for c in CHARACTER_ORDER if c in chars]


# ---------------------------------------------------------------- forms

def _edot(u, v):
    return np.sum(np.asarray(u) * np.asarray(v), axis=-1)


def band_threshold(x1, x2):
    """Scale-aware lightlike band for EG - F^2."""
    return BAND_TAU * np.maximum(1.0, _edot(x1, x1) * _edot(x2, x2))


def metric_det(f: SurfaceFamily, p1, p2):
    x1, x2 = f.derivatives(p1, p2, 1)
    e, fm, g = dot(x1, x1), dot(x1, x2), dot(x2, x2)
    return e * g - fm * fm


def character_at(f: SurfaceFamily, p1, p2):
    """Per-point causal character letters ('S', 'T', 'L') as an array."""
    x1, x2 = f.derivatives(p1, p2, 1)
    det = dot(x1, x1) * dot(x2, x2) - dot(x1, x2) ** 2
    band = band_threshold(x1, x2)
    return np.where(det > band, "S", np.where(det < -band, "T", "L"))


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    normal: Vector3L | None
    epsilon: int

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F


def fundamental_forms(f: SurfaceFamily, p1: float, p2: float) -> FundamentalForms:
    """First and second fundamental forms with the normal X1 x X2 / sqrt|EG - F^2|.

    In the lightlike band the normal is undefined and L = M = N = 0.
    """
    x1, x2, x11, x12, x22 = (np.asarray(v, dtype=float) for v in f.derivatives(float(p1), float(p2), 2))
    e, fm, g = float(dot(x1, x1)), float(dot(x1, x2)), float(dot(x2, x2))
    det = e * g - fm * fm
    if abs(det) <= float(band_threshold(x1, x2)):
        return FundamentalForms(e, fm, g, 0.0, 0.0, 0.0, None, 0)
    nu = cross(x1, x2) / math.sqrt(abs(det))
    return FundamentalForms(
        e, fm, g,
        float(dot(x11, nu)), float(dot(x12, nu)), float(dot(x22, nu)),
        Vector3L.of(nu), 1 if det > 0 else -1,
    )


def mean_curvature_residual(f: SurfaceFamily, p1: float, p2: float) -> float:
    """|EN - 2FM + GL| / (|EG - F^2| + 1)."""
    ff = fundamental_forms(f, p1, p2)
    if ff.epsilon == 0:
        raise LightlikePoint(f"({p1}, {p2}) lies in the lightlike band")
    return abs(ff.E * ff.N - 2.0 * ff.F * ff.M + ff.G * ff.L) / (abs(ff.det) + 1.0)


def mean_curvature_residuals(f: SurfaceFamily, p1, p2) -> np.ndarray:
    """Vectorised residual; lightlike-band points come back as NaN."""
    x1, x2, x11, x12, x22 = f.derivatives(p1, p2, 2)
    e, fm, g = dot(x1, x1), dot(x1, x2), dot(x2, x2)
    det = e * g - fm * fm
    band = band_threshold(x1, x2)
    ok = np.abs(det) > band
    nu = cross(x1, x2) / np.sqrt(np.where(ok, np.abs(det), 1.0))[..., None]
    res = np.abs(e * dot(x22, nu) - 2.0 * fm * dot(x12, nu) + g * dot(x11, nu)) / (np.abs(det) + 1.0)
    return np.where(ok, res, np.nan)


# ---------------------------------------------------------------- loci

class LocusKind(str, enum.Enum):
    LINE = "line"
    NULL_CURVE = "null_curve"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class LightlikeLocus:
    """A connected piece of the lightlike part.

    ``params`` holds (p1, p2) rows and ``points`` the matching ambient points.
    Analytic loci also carry ``curve`` (p2 as a function of p1) and the p1
    interval it was sampled on.
    """

    kind: LocusKind
    params: np.ndarray
    points: np.ndarray
    straightness: float
    direction: Vector3L | None = None
    curve: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False, repr=False)
    p1_range: tuple[float, float] | None = None
    label: str = ""

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.label:
            out["label"] = self.label
        if self.direction is not None:
            out["direction"] = [self.direction.x, self.direction.y, self.direction.t]
        out["straightness_residual"] = self.straightness
        out["samples"] = len(self.params)
        return out


def straightness_of_points(points) -> float:
    """Max distance from the chord through the end points, over chord length."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        raise TooFewSamples(f"straightness needs at least 3 samples, got {len(pts)}")
    chord = pts[-1] - pts[0]
    length = float(np.linalg.norm(chord))
    if length == 0.0:
        raise TooFewSamples("locus samples do not span a chord")
    unit = chord / length
    rel = pts - pts[0]
    perp = rel - np.outer(rel @ unit, unit)
    return float(np.linalg.norm(perp, axis=1).max() / length)


def straightness_residual(locus: LightlikeLocus) -> float:
    return straightness_of_points(locus.points)


def kind_for(residual: float) -> LocusKind:
    if residual < LINE_MAX:
        return LocusKind.LINE
    if residual > CURVE_MIN:
        return LocusKind.NULL_CURVE
    return LocusKind.INDETERMINATE


def make_locus(f: SurfaceFamily, params: np.ndarray, label: str = "",
               curve=None, p1_range=None, kind: LocusKind | None = None) -> LightlikeLocus:
    params = np.asarray(params, dtype=float)
    points = f.position(params[:, 0], params[:, 1])
    res = straightness_of_points(points)
    kind = kind or kind_for(res)
    direction = None
    if kind is LocusKind.LINE:
        chord = points[-1] - points[0]
        direction = Vector3L.of(chord / np.linalg.norm(chord))
    return LightlikeLocus(kind, params, points, res, direction, curve, p1_range, label)


# ---------------------------------------------------------------- prediction

@dataclass(frozen=True)
class Prediction:
    characters: frozenset
    clause: str
    notes: str = ""


def _pred(clause: str, *chars, notes: str = "") -> Prediction:
    return Prediction(frozenset(chars), clause, notes)


def _inner(f) -> bool:
    """True when the active component contains r = 0."""
    return f.component().contains(0.0)


def predict_class(f: SurfaceFamily) -> Prediction:
    """Closed-form causal character set on the active domain component."""
    if isinstance(f, Transformed):
        return predict_class(f.base)
    if isinstance(f, EuclideanGeneral):
        a, b = f.a, f.b
        if close(b, 2 * a):
            return _pred("euclid-iii", S, L)
        if b > 2 * a:
            return _pred("euclid-i", S)
        if close(b, -2 * a):
            return _pred("euclid-iv", T, L) if _inner(f) else _pred("euclid-v-line-curves", S, T, L)
        if b < -2 * a and _inner(f):
            return _pred("euclid-ii", T)
        return _pred("euclid-v", S, T, L)
    if isinstance(f, EuclideanSingular):
        return _pred("euclid-singular", T, L)
    if isinstance(f, HyperbolaGeneral):
        return _predict_hyperbola(f)
    if isinstance(f, HyperbolaSingular):
        if f.variant is Variant.TYPE_I:
            return _pred("hyperbola-singular-I", T)
        return _pred("hyperbola-singular-II", T, L)
    if isinstance(f, (Parabola, EntireGraph)):
        return _predict_parabola(f)
    raise InvalidParams(f"no classification for {type(f).__name__}")


def _predict_hyperbola(f: HyperbolaGeneral) -> Prediction:
    if f.variant is Variant.TYPE_I:
        return _pred("hyperbola-I", T)
    a, b, d = f.a, f.b, f.delta
    c2 = b * b - a * a
    if c2 < 0 and not close(a * a, b * b):
        return _pred("hyperbola-II-v", S, T, L)
    if close(a * a, b * b):
        # h(theta) = a r^2 sinh - b r^2 cosh ranges over a half line of sign -sign(b)
        if b > 0:
            return _pred("hyperbola-II-v", S, T, L) if d > 0 else _pred("hyperbola-II-ii-2" if close(a, b) else "hyperbola-II-ii-1", T)
        return _pred("hyperbola-II-v", S, T, L)
    c = math.sqrt(c2)
    inner = _inner(f)
    if b > 0:
        if close(d, c):
            return _pred("hyperbola-II-iv-1", T, L) if inner else _pred("hyperbola-II-ii-1", T)
        if d > c:
            return _pred("hyperbola-II-v", S, T, L) if inner else _pred("hyperbola-II-ii-1", T)
        return _pred("hyperbola-II-ii-1", T)
    if close(d, c):
        return _pred("hyperbola-II-v", S, T, L) if inner else _pred("hyperbola-II-iv-2", T, L)
    if d > c:
        return _pred("hyperbola-II-v", S, T, L) if inner else _pred("hyperbola-II-ii-3", T)
    return _pred("hyperbola-II-v", S, T, L)


_PARABOLA_NOTE = ("for a > 0 the stated rule reads spacelike iff p < 0 while the discriminant "
                  "-2ap cos^2 reads spacelike iff p > 0; the discriminant reading is used")


def _predict_parabola(f) -> Prediction:
    """Sign analysis of av^2 - 2(b/r)v + 2g' whose reduced discriminant is b^2/r^2 - 2ag'."""
    case = f.case
    a, b, p = f.a, f.b, f.p
    if case is ParabolaCase.GEN_ZERO:
        if b == 0:
            raise InvalidParams("rotational triple (b = 0) has no classification rule")
        return _pred("parabola-gen-zero", S, T, L)
    if case is ParabolaCase.GEN_POS:
        if p > 0:
            return _pred("parabola-pos-spacelike", S, notes=_PARABOLA_NOTE)
        if p == 0:
            return _pred("parabola-pos-line", S, L, notes=_PARABOLA_NOTE)
        return _pred("parabola-pos-all", S, T, L, notes=_PARABOLA_NOTE)
    if p < 0 and case is ParabolaCase.GEN_NEG or p > 0 and case is ParabolaCase.SINGULAR:
        return _pred(f"parabola-{case.value}-timelike", T)
    if p == 0:
        return _pred(f"parabola-{case.value}-line", T, L)
    return _pred(f"parabola-{case.value}-all", S, T, L)


# ---------------------------------------------------------------- analytic loci

def _locus_window(f: SurfaceFamily, lo: float | None = None, hi: float | None = None, n: int = 33):
    (wlo, whi), _ = f.default_window()
    if lo is not None:
        wlo = max(wlo, lo)
    if hi is not None:
        whi = min(whi, hi)
    if not wlo < whi:
        raise NoLightlikePart("lightlike locus does not meet the sampling window")
    return np.linspace(wlo, whi, n)


def _analytic(f, curve, label, lo=None, hi=None, kind=None) -> LightlikeLocus:
    p1 = _locus_window(f, lo, hi)
    params = np.column_stack([p1, curve(p1)])
    return make_locus(f, params, label, curve, (float(p1[0]), float(p1[-1])), kind)


def _const(value: float):
    return lambda p1: np.full_like(np.asarray(p1, dtype=float), value)


def lightlike_locus_analytic(f: SurfaceFamily) -> list[LightlikeLocus]:
    """Closed-form lightlike loci, sampled on the family's default window."""
    if isinstance(f, Transformed):
        return [make_locus(f, lc.params, lc.label, lc.curve, lc.p1_range, lc.kind)
                for lc in lightlike_locus_analytic(f.base)]
    if isinstance(f, EuclideanGeneral):
        a, b = f.a, f.b
        if close(b, 2 * a):
            return [_analytic(f, _const(math.pi), "theta=pi")]
        if close(b, -2 * a):
            if _inner(f):
                return [_analytic(f, _const(0.0), "theta=0")]
            lo = 1.0 / math.sqrt(a)

            def arc(p1):
                r2 = np.asarray(p1) ** 2
                return np.arccos(np.clip((2.0 - a * r2) / (a * r2), -1.0, 1.0))

            return [
                _analytic(f, _const(math.pi), "theta=pi"),
                _analytic(f, arc, "eta=0,+", lo=lo * 1.001),
                _analytic(f, lambda p1: TWO_PI - arc(p1), "eta=0,-", lo=lo * 1.001),
            ]
    elif isinstance(f, EuclideanSingular):
        return [_analytic(f, _const(0.0), "theta=0"), _analytic(f, _const(math.pi), "theta=pi")]
    elif isinstance(f, HyperbolaGeneral) and f.variant is Variant.TYPE_II:
        c = f.c
        if c and c > 0 and close(f.delta, c):
            inner = _inner(f)
            if f.b > 0 and inner:
                return [_analytic(f, _const(math.asinh(f.a / c)), "theta1")]
            if f.b < 0 and not inner:
                return [_analytic(f, _const(math.asinh(-f.a / c)), "theta2")]
    elif isinstance(f, HyperbolaSingular) and f.variant is Variant.TYPE_II:
        return [_analytic(f, _const(math.atanh(f.a / f.b)), "theta0")]
    elif isinstance(f, EntireGraph):
        k = f.k

        def plus(u):
            return np.sqrt(-8.0 * f.p * np.exp(-2.0 * k * np.asarray(u)) / k)

        return [_analytic(f, plus, "c+"), _analytic(f, lambda u: -plus(u), "c-")]
    elif isinstance(f, Parabola) and f.p == 0 and f.case is not ParabolaCase.GEN_ZERO:
        a, b = f.a, f.b
        return [_analytic(f, lambda u: b / (a * f.rfg(u).r), "v=b/(ar)")]
    raise NoLightlikePart(f"{f.key} with {f.params()} has no closed-form lightlike locus")


# ---------------------------------------------------------------- sampling

@dataclass(frozen=True)
class Grid:
    p1: tuple[float, float, int]
    p2: tuple[float, float, int]

    def __post_init__(self):
        for lo, hi, n in (self.p1, self.p2):
            if not (lo < hi and int(n) >= 2):
                raise InvalidParams(f"bad grid range {lo}:{hi}:{n}")

    @classmethod
    def default(cls, f: SurfaceFamily, n1: int = 60, n2: int = 181) -> "Grid":
        w1, w2 = f.default_window()
        return cls((w1[0], w1[1], n1), (w2[0], w2[1], n2))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.p1[0], self.p1[1], int(self.p1[2])),
                np.linspace(self.p2[0], self.p2[1], int(self.p2[2])))


@dataclass
class RowScan:
    p1: float
    p2: np.ndarray
    det: np.ndarray
    band: np.ndarray
    zeros: np.ndarray  # refined p2 values of lightlike points


def _row_quantities(f: SurfaceFamily, p1: float, p2):
    x1, x2, _, x12, x22 = f.derivatives(p1, p2, 2)
    e, fm, g = dot(x1, x1), dot(x1, x2), dot(x2, x2)
    det = e * g - fm * fm
    de = 2.0 * dot(x1, x12)
    dfm = dot(x12, x2) + dot(x1, x22)
    dg = 2.0 * dot(x2, x22)
    ddet = de * g + e * dg - 2.0 * fm * dfm
    return det, ddet, band_threshold(x1, x2)


def _bisect(fn, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorised bisection for sign changes of fn on [lo, hi]."""
    flo = fn(lo)
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi)):
            break
        fm = fn(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _row_brackets(p2, det, ddet, band):
    """Crossing brackets, tangency brackets and loose in-band values of one row.

    Grid values inside the band count as sign 0, so a tangency that falls on
    a grid node is bracketed by its signed neighbours instead of producing
    two roundoff sign changes.
    """
    sb = np.where(np.abs(det) <= band, 0.0, np.sign(det))
    signed = np.nonzero(sb)[0]
    cross, tang, loose = [], [], []
    if len(signed) == 0:
        loose.extend(p2)
    else:
        loose.extend(p2[: signed[0]])
        loose.extend(p2[signed[-1] + 1:])
    for i, j in zip(signed[:-1], signed[1:]):
        if sb[i] != sb[j]:
            cross.append((i, j))
        elif sb[i] * ddet[i] < 0 < sb[i] * ddet[j]:
            tang.append((i, j))
        elif j > i + 1:
            loose.extend(p2[i + 1: j])
    return cross, tang, loose


def scan_rows(f: SurfaceFamily, p1s, p2: np.ndarray) -> list[RowScan]:
    """Scan a block of rows with one vectorised evaluation per stage."""
    p1s = np.asarray(p1s, dtype=float)
    if len(p1s) == 0:
        return []
    det, ddet, band = _row_quantities(f, p1s[:, None], p2[None, :])
    per_row = [_row_brackets(p2, det[k], ddet[k], band[k]) for k in range(len(p1s))]

    def refine(which: int, value_index: int):
        rows, lo, hi = [], [], []
        for k, br in enumerate(per_row):
            for i, j in br[which]:
                rows.append(k)
                lo.append(p2[i])
                hi.append(p2[j])
        if not rows:
            return np.zeros(0, dtype=int), np.zeros(0)
        rows = np.array(rows)
        q1 = p1s[rows]
        root = _bisect(lambda q: _row_quantities(f, q1, q)[value_index], np.array(lo), np.array(hi))
        return rows, root

    c_rows, c_root = refine(0, 0)
    t_rows, t_root = refine(1, 1)
    if len(t_rows):
        d, _, bd = _row_quantities(f, p1s[t_rows], t_root)
        keep = np.abs(d) <= bd
        t_rows, t_root = t_rows[keep], t_root[keep]
    tol = 1e-9 * (p2[-1] - p2[0])
    full_period = f.periodic and p2[-1] - p2[0] >= TWO_PI * (1 - 1e-12)
    out = []
    for k, p1 in enumerate(p1s):
        z = np.sort(np.concatenate([c_root[c_rows == k], t_root[t_rows == k],
                                    np.asarray(per_row[k][2], dtype=float)]))
        if len(z):
            z = z[np.concatenate([[True], np.diff(z) > tol])]
        if full_period and len(z) > 1:
            # the seam value appears at both ends of a full period
            if np.abs(z[0] - p2[0]) <= tol and np.abs(z[-1] - (p2[0] + TWO_PI)) <= tol:
                z = z[:-1]
        out.append(RowScan(float(p1), p2, det[k], band[k], z))
    return out


def scan_row(f: SurfaceFamily, p1: float, p2: np.ndarray) -> RowScan:
    return scan_rows(f, [p1], np.asarray(p2, dtype=float))[0]


ROW_BLOCK = 16


def scan_grid(f: SurfaceFamily, grid: Grid, workers: int = 1) -> list[RowScan]:
    """Rows in ascending p1; rows outside the domain are skipped.

    Rows are processed in fixed blocks, so the result does not depend on the
    number of workers.
    """
    p1s, p2 = grid.axes()
    rows = [float(v) for v in p1s if f.in_domain(float(v))]
    if not rows:
        raise OutOfDomain("sampling window misses the domain")
    blocks = [rows[i:i + ROW_BLOCK] for i in range(0, len(rows), ROW_BLOCK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda blk: scan_rows(f, blk, p2), blocks))
    else:
        parts = [scan_rows(f, blk, p2) for blk in blocks]
    return [row for part in parts for row in part]


def _link_tracks(rows: list[RowScan], period: float | None) -> list[list[tuple[float, float]]]:
    """Greedy nearest-neighbour linking of per-row zeros into tracks."""
    if not rows:
        return []
    dp2 = float(rows[0].p2[1] - rows[0].p2[0])

    def dist(x, y):
        d = abs(x - y)
        return min(d, period - d) if period else d

    active: list[list[tuple[float, float]]] = []
    done: list[list[tuple[float, float]]] = []
    for row in rows:
        zs = list(row.zeros)
        pairs = []
        for ti, tr in enumerate(active):
            last = tr[-1][1]
            step = tr[-1][1] - tr[-2][1] if len(tr) > 1 else 0.0
            if period and abs(step) > period / 2:
                step = 0.0
            pred = last + step
            gate = 4.0 * dp2 + 2.0 * abs(step)
            for zi, z in enumerate(zs):
                dd = dist(pred, z)
                if dd <= gate:
                    pairs.append((dd, ti, zi))
        pairs.sort()
        used_t, used_z = set(), set()
        for _, ti, zi in pairs:
            if ti in used_t or zi in used_z:
                continue
            used_t.add(ti)
            used_z.add(zi)
            active[ti].append((row.p1, float(zs[zi])))
        nxt = []
        for ti, tr in enumerate(active):
            (nxt if ti in used_t else done).append(tr)
        for zi, z in enumerate(zs):
            if zi not in used_z:
                nxt.append([(row.p1, float(z))])
        active = nxt
    return done + active


@dataclass(frozen=True)
class ClassReport:
    family: str
    params: dict
    predicted: frozenset
    sampled: frozenset
    lightlike_loci: tuple
    agreement: bool
    clause: str
    notes: str

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "clause": self.clause,
            "predicted": [c.value for c in sorted_characters(self.predicted)],
            "sampled": [c.value for c in sorted_characters(self.sampled)],
            "agreement": self.agreement,
            "loci": [lc.as_dict() for lc in self.lightlike_loci],
            "notes": self.notes,
        }


def sampled_characters(rows: list[RowScan]) -> frozenset:
    chars = set()
    for row in rows:
        if np.any(row.det > row.band):
            chars.add(S)
        if np.any(row.det < -row.band):
            chars.add(T)
        if len(row.zeros):
            chars.add(L)
    return frozenset(chars)


def extract_loci(f: SurfaceFamily, rows: list[RowScan], min_samples: int = 3) -> list[LightlikeLocus]:
    period = None
    if f.periodic and rows and rows[0].p2[-1] - rows[0].p2[0] >= TWO_PI * (1 - 1e-12):
        period = TWO_PI
    loci = []
    for tr in _link_tracks(rows, period):
        if len(tr) < min_samples:
            continue
        loci.append(make_locus(f, np.array(tr)))
    return loci


def sample_class(f: SurfaceFamily, grid: Grid | None = None, workers: int = 1) -> ClassReport:
    """Empirical causal characters and lightlike loci, compared with the prediction."""
    grid = grid or Grid.default(f)
    rows = scan_grid(f, grid, workers)
    sampled = sampled_characters(rows)
    loci = extract_loci(f, rows)
    try:
        pred = predict_class(f)
        predicted, clause, notes = pred.characters, pred.clause, pred.notes
    except InvalidParams as exc:
        predicted, clause, notes = frozenset(), "none", str(exc)
    odd = [lc for lc in loci if lc.kind is LocusKind.INDETERMINATE]
    if odd:
        extra = f"{len(odd)} locus piece(s) with straightness between {LINE_MAX:g} and {CURVE_MIN:g}"
        notes = f"{notes}; {extra}" if notes else extra
    return ClassReport(f.key, f.params(), predicted, sampled, tuple(loci),
                       predicted == sampled, clause, notes)


# ---------------------------------------------------------------- rotation test

@dataclass(frozen=True)
class RotationalResult:
    rotational: bool
    max_deviation: float


def rotational_check(t: Parabola, samples: int = 9, angles=(-1.0, -0.5, 0.5, 1.0)) -> RotationalResult:
    """Is the surface invariant under the null rotations fixing (0, 1, 1)?

    Sampled points are moved by the null rotation and projected back onto the
    surface: u is recovered from y - t = 2u (preserved by the rotation) and v
    from the x slot, so the deviation is the distance to X(u, v).
    """
    from .minkowski import AxisKind, one_parameter_isometry

    if not isinstance(t, (Parabola, EntireGraph)):
        raise InvalidParams("rotational_check applies to parabola families")
    (ulo, uhi), (vlo, vhi) = t.default_window()
    u = np.linspace(ulo, uhi, samples)
    v = np.linspace(vlo, vhi, samples)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    pts = t.position(uu, vv).reshape(-1, 3)
    worst = 0.0
    for theta in angles:
        moved = one_parameter_isometry(AxisKind.LIGHTLIKE, theta).apply(pts)
        un = (moved[:, 1] - moved[:, 2]) / 2.0
        if not all(t.in_domain(float(x)) for x in un):
            raise OutOfDomain("rotated sample left the parameter domain")
        vn = moved[:, 0] - t.rfg(un).f
        back = t.position(un, vn)
        dev = np.linalg.norm(back - moved, axis=1) / np.maximum(1.0, np.linalg.norm(moved, axis=1))
        worst = max(worst, float(dev.max()))
    return RotationalResult(worst < 1e-8, worst)
