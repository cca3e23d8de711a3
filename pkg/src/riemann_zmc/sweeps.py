"""Default parameter sweeps and the batch checks run by ``verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import (
    Grid,
    LocusKind,
    lightlike_locus_analytic,
    mean_curvature_residuals,
    rotational_check,
    straightness_residual,
)
from .entire_graph import (
    EntireGraph,
    entire_graph_function,
    graph_zmc_residual,
    helicoid_second_kind,
    ruled_line_test,
    scherk_graph,
)
from .errors import NoLightlikePart
from .families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
    SurfaceFamily,
    ode_residual,
)

FAMILY_GROUPS = (
    "euclidean-general",
    "euclidean-singular",
    "hyperbola-general",
    "hyperbola-singular",
    "parabola",
    "entire-graph",
)

# min deviation of the entire graph decays towards its flat asymptote, so the
# non-ruled verdict is checked near the origin (7x7 grid on [-1.5, 1.5]^2)
RULED_TEST_POINTS = tuple((float(x), float(y)) for x in np.linspace(-1.5, 1.5, 7)
                          for y in np.linspace(-1.5, 1.5, 7))

DEFAULT_TOLERANCES = {
    "zmc": 1e-6,
    "graph_zmc": 1e-5,
    "ode": 1e-8,
    "straightness": 1e-8,
    "rotational": 1e-8,
    "ruled": 1e-8,
    "non_ruled": 1e-3,
}


def default_sweep(group: str) -> list[SurfaceFamily]:
    """At least ten valid parameter sets per family group."""
    if group == "euclidean-general":
        ab = [(1, 3), (1, 2), (1, 0), (1, -2), (1, -3), (0.5, 1), (2, 4), (2, -4),
              (0.5, -1.5), (1.5, 0.5), (0.3, 5), (3, -1)]
        return [EuclideanGeneral(a, b) for a, b in ab]
    if group == "euclidean-singular":
        return [EuclideanSingular(a) for a in (0.25, 0.5, 0.75, 1, 1.5, 2, 3, 4, 6, 9)]
    if group == "hyperbola-general":
        sets = [("I", 1, 0.3, 0.5), ("I", 2, 1, 0), ("I", 0.5, 1, 1), ("I", 1, 0, -0.2),
                ("II", 0, 1, 1), ("II", 0.5, 1, math.sqrt(0.75)), ("II", 0, -1, 0.5),
                ("II", 1, 0.5, 0), ("II", 1, 1, 0.3), ("II", -0.5, 2, 1),
                ("II", 0, 1, -1), ("II", 0.3, -1.2, 2)]
        return [HyperbolaGeneral(v, a, b, d) for v, a, b, d in sets]
    if group == "hyperbola-singular":
        sets = [("I", 0, 1), ("I", 0.5, 1), ("I", -0.5, 2), ("I", 1, 3), ("I", 0.2, -1),
                ("II", 0, 1), ("II", 0.5, 1), ("II", -0.5, 2), ("II", 1, 3), ("II", 0.2, -1)]
        return [HyperbolaSingular(v, a, b) for v, a, b in sets]
    if group == "parabola":
        sets = [("gen-zero", 0, 1, 0, 0), ("gen-zero", 0, -2, 1, 0.5), ("gen-zero", 0, 0.5, -1, -1),
                ("gen-pos", 1, 0, 0, 0), ("gen-pos", 2, 1, 0.1, 0), ("gen-pos", 0.5, -1, 0, 0.3),
                ("gen-neg", -1, 0, 0, 0), ("gen-neg", -2, 1, 0.5, 0), ("gen-neg", -0.5, 0.5, 0, -0.5),
                ("singular", -2, 0, 0, 0), ("singular", -1, 1, 0, 0), ("singular", -0.5, -1, 0, 1)]
        return [Parabola(case, a, b, c, p) for case, a, b, c, p in sets]
    if group == "entire-graph":
        ap = [(-0.5, -0.5), (-0.5, -1), (-1, -0.5), (-1, -1), (-1, -2), (-2, -1),
              (-2, -2), (-2, -0.25), (-1.5, -1), (-0.25, -3)]
        return [EntireGraph(a, p) for a, p in ap]
    raise KeyError(group)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "value": self.value, "tolerance": self.tolerance,
               "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def _upper(name: str, value: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, float(value), tol, bool(value < tol), detail)


def zmc_sweep_max(f: SurfaceFamily, n1: int = 34, n2: int = 34) -> tuple[float, int]:
    """(max residual, number of non-lightlike points) on the default window."""
    p1, p2 = Grid.default(f, n1, n2).axes()
    p1 = np.array([v for v in p1 if f.in_domain(float(v))])
    res = mean_curvature_residuals(f, p1[:, None], p2[None, :])
    finite = res[np.isfinite(res)]
    return float(finite.max()) if finite.size else 0.0, int(finite.size)


def ode_sweep_max(f: SurfaceFamily, points: int = 100, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    (lo, hi), _ = f.default_window()
    worst = 0.0
    for u in rng.uniform(lo, hi, points):
        worst = max(worst, ode_residual(f, float(u)))
    return worst


def run_checks(groups=FAMILY_GROUPS, tolerances: dict | None = None) -> list[CheckResult]:
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    out: list[CheckResult] = []
    for group in groups:
        fams = default_sweep(group)
        zmc = max(zmc_sweep_max(f)[0] for f in fams)
        out.append(_upper(f"zmc:{group}", zmc, tol["zmc"], f"{len(fams)} parameter sets"))
        ode = max(ode_sweep_max(f) for f in fams)
        out.append(_upper(f"ode:{group}", ode, tol["ode"]))
        worst = 0.0
        for f in fams:
            try:
                loci = lightlike_locus_analytic(f)
            except NoLightlikePart:
                continue
            for lc in loci:
                if lc.kind is LocusKind.LINE:
                    worst = max(worst, straightness_residual(lc))
        out.append(_upper(f"straightness:{group}", worst, tol["straightness"]))
    if "entire-graph" in groups or "parabola" in groups:
        xs = np.linspace(-3, 3, 32)
        gx, gy = np.meshgrid(xs, xs)
        graphs = [("entire-graph", entire_graph_function(EntireGraph(-2, -1), analytic=True)),
                  ("helicoid", helicoid_second_kind()), ("scherk", scherk_graph())]
        for name, g in graphs:
            res = float(np.nanmax(graph_zmc_residual(g, gx.ravel(), gy.ravel())))
            out.append(_upper(f"graph_zmc:{name}", res, tol["graph_zmc"]))
        rot = rotational_check(Parabola("gen-zero", 0, 0, 0, 0, allow_rotational=True))
        out.append(_upper("rotational:control", rot.max_deviation, tol["rotational"]))
        pts = RULED_TEST_POINTS
        heli = max(rp.deviation for rp in ruled_line_test(helicoid_second_kind(), pts))
        out.append(_upper("ruled:helicoid", heli, tol["ruled"]))
        graph = entire_graph_function(EntireGraph(-2, -1), analytic=True)
        dev = min(rp.deviation for rp in ruled_line_test(graph, pts))
        out.append(CheckResult("non_ruled:entire-graph", dev, tol["non_ruled"], dev > tol["non_ruled"],
                               "minimum deviation must exceed the tolerance"))
    return out


__all__ = ["CheckResult", "DEFAULT_TOLERANCES", "FAMILY_GROUPS", "default_sweep",
           "RULED_TEST_POINTS", "ode_sweep_max", "run_checks", "zmc_sweep_max"]
