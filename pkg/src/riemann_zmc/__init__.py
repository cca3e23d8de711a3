"""Zero mean curvature surfaces of Riemann type in Lorentz-Minkowski 3-space."""
from __future__ import annotations

from .characteristic import AlphaType, CharacteristicReport, characteristic
from .classify import (
    ClassReport,
    Grid,
    LightlikeLocus,
    LocusKind,
    fundamental_forms,
    lightlike_locus_analytic,
    mean_curvature_residual,
    predict_class,
    rotational_check,
    sample_class,
    straightness_residual,
)
from .entire_graph import EntireGraph, entire_graph_function, ruled_line_test, solve_height
from .errors import ZMCError
from .families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
    ParabolaCase,
    SurfaceFamily,
    Transformed,
    Variant,
    evaluate,
    maximal_domain,
    ode_residual,
    partials,
)
from .minkowski import CausalCharacter, Isometry, Vector3L, causal_character, lorentz_cross, lorentz_dot
from .mesh import MeshOutput, build_mesh

__version__ = "0.1.0"

__all__ = [
    "AlphaType",
    "CausalCharacter",
    "CharacteristicReport",
    "ClassReport",
    "EntireGraph",
    "EuclideanGeneral",
    "EuclideanSingular",
    "Grid",
    "HyperbolaGeneral",
    "HyperbolaSingular",
    "Isometry",
    "LightlikeLocus",
    "LocusKind",
    "MeshOutput",
    "Parabola",
    "ParabolaCase",
    "SurfaceFamily",
    "Transformed",
    "Variant",
    "Vector3L",
    "ZMCError",
    "build_mesh",
    "causal_character",
    "characteristic",
    "entire_graph_function",
    "evaluate",
    "fundamental_forms",
    "lightlike_locus_analytic",
    "lorentz_cross",
    "lorentz_dot",
    "maximal_domain",
    "mean_curvature_residual",
    "ode_residual",
    "partials",
    "predict_class",
    "rotational_check",
    "ruled_line_test",
    "sample_class",
    "solve_height",
    "straightness_residual",
]
