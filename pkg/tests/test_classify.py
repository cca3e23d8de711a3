from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clauses import EXPECTED, clause_params
from riemann_zmc.classify import (
    Grid,
    LocusKind,
    fundamental_forms,
    lightlike_locus_analytic,
    mean_curvature_residual,
    predict_class,
    rotational_check,
    sample_class,
    straightness_of_points,
)
from riemann_zmc.errors import InvalidParams, NoLightlikePart, TooFewSamples
from riemann_zmc.families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
)
from riemann_zmc.minkowski import CausalCharacter

S, T, L = CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE, CausalCharacter.LIGHTLIKE


def test_metric_determinant_examples():
    ff = fundamental_forms(EuclideanGeneral(1.0, 2.0), 1.0, 0.0)
    assert ff.det == pytest.approx(2.0, rel=1e-14)
    assert fundamental_forms(Parabola("singular", -2.0, 0.0, 0.0, -1.0), 0.0, 0.0).det == pytest.approx(16.0)


@pytest.mark.parametrize("r", [0.2, 1.0, 2.5, -1.3])
def test_determinant_vanishes_on_tangent_locus(r):
    assert abs(fundamental_forms(EuclideanGeneral(1.0, 2.0), r, math.pi).det) < 1e-12


@settings(max_examples=60, deadline=None)
@given(a=st.floats(0.2, 2.0), b=st.floats(-4.0, 4.0), s=st.floats(0.05, 0.95), theta=st.floats(0, 2 * math.pi))
def test_determinant_factorization(a, b, s, theta):
    # EG - F^2 = -(r^2 / Delta^2) xi eta, xi = 1 + a r^2 cos + Delta, eta = 1 - a r^2 cos - Delta
    f = EuclideanGeneral(a, b)
    comp = f.component()
    hi = min(comp.hi, 2.0)
    r = s * hi
    delta = math.sqrt(a * a * r**4 + b * r * r + 1)
    xi = 1 + a * r * r * math.cos(theta) + delta
    eta = 1 - a * r * r * math.cos(theta) - delta
    expected = -(r * r / delta**2) * xi * eta
    scale = max(1.0, (r * r / delta**2) * abs(xi) * (abs(eta) + 1))
    assert fundamental_forms(f, r, theta).det == pytest.approx(expected, abs=1e-10 * scale)


@pytest.mark.parametrize(
    "f, p1, p2",
    [
        (EuclideanGeneral(1.0, 2.0), 1.0, 0.0),
        (HyperbolaSingular("I", 0.0, 1.0), 0.3, 0.7),
        (Parabola("gen-zero", 0.0, 1.0, 0.0, 1.0), -0.5, 0.2),
        (HyperbolaGeneral("II", 0.5, -1.0, 0.2), 0.4, 1.0),
        (EuclideanSingular(3.0), 0.2, 2.0),
    ],
)
def test_mean_curvature_examples(f, p1, p2):
    assert mean_curvature_residual(f, p1, p2) < 1e-8


@pytest.mark.parametrize(
    "f, expected, clause",
    [
        (EuclideanGeneral(1.0, 3.0), {S}, "euclid-i"),
        (HyperbolaGeneral("II", 0.0, 1.0, 1.0), {T, L}, "hyperbola-II-iv-1"),
        (HyperbolaGeneral("I", 1.0, 0.5, 1.0), {T}, "hyperbola-I"),
        (Parabola("singular", -2.0, 0.0, 0.0, -1.0), {S, T, L}, "parabola-singular-all"),
        (EuclideanGeneral(1.0, 0.0), {S, T, L}, "euclid-v"),
    ],
)
def test_predict_examples(f, expected, clause):
    pred = predict_class(f)
    assert pred.characters == frozenset(expected)
    assert pred.clause == clause


def test_gen_pos_prediction_notes_the_sign_rule():
    assert predict_class(Parabola("gen-pos", 1.0, 0.5, 0.0, 1.0)).characters == frozenset({S})
    assert predict_class(Parabola("gen-pos", 1.0, 0.5, 0.0, -1.0)).characters == frozenset({S, T, L})
    assert predict_class(Parabola("gen-pos", 1.0, 0.5, 0.0, 1.0)).notes


def test_euclid_singular_loci():
    loci = lightlike_locus_analytic(EuclideanSingular(1.0))
    assert len(loci) == 2
    for lc, x0 in zip(loci, (1.0, -1.0)):
        assert lc.kind is LocusKind.LINE
        assert tuple(lc.direction) == pytest.approx((1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)))
        # every point is u (1, 0, 1) + (x0, 0, 0)
        assert np.allclose(lc.points[:, 0] - lc.points[:, 2], x0)
        assert np.allclose(lc.points[:, 1], 0.0, atol=1e-15)


def test_hyperbola_iv1_locus_through_origin():
    (lc,) = lightlike_locus_analytic(HyperbolaGeneral("II", 0.0, 1.0, 1.0))
    assert lc.kind is LocusKind.LINE
    assert tuple(lc.direction) == pytest.approx((1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)))
    assert straightness_of_points(np.vstack([[0.0, 0.0, 0.0], lc.points])) < 1e-12


def test_parabola_line_direction():
    (lc,) = lightlike_locus_analytic(Parabola("gen-neg", -2.0, 1.0, 0.0, 0.0))
    d = np.array([1.0, 0.75, -1.25])
    assert np.allclose(np.abs(np.array(lc.direction) @ d), np.linalg.norm(d))


def test_no_lightlike_part():
    with pytest.raises(NoLightlikePart):
        lightlike_locus_analytic(EuclideanGeneral(1.0, 3.0))


def test_straightness_needs_three_points():
    with pytest.raises(TooFewSamples):
        straightness_of_points([[0, 0, 0], [1, 1, 1]])


def test_sample_tangent_case():
    rep = sample_class(EuclideanGeneral(1.0, 2.0), Grid((0.1, 3.0, 60), (0.0, 2 * math.pi, 181)))
    assert rep.sampled == frozenset({S, L})
    assert rep.agreement
    (lc,) = rep.lightlike_loci
    assert lc.kind is LocusKind.LINE
    assert np.allclose(lc.params[:, 1], math.pi)


def test_sample_line_plus_null_curves():
    rep = sample_class(EuclideanGeneral(1.0, -2.0, r0=2.0), Grid((1.05, 3.0, 60), (0.0, 2 * math.pi, 181)))
    kinds = sorted(lc.kind.value for lc in rep.lightlike_loci)
    assert kinds == ["line", "null_curve", "null_curve"]
    for lc in rep.lightlike_loci:
        if lc.kind is LocusKind.NULL_CURVE:
            r, th = lc.params[:, 0], lc.params[:, 1]
            assert np.allclose(r * np.cos(th), (2 - r * r) / r, atol=1e-8)
            assert lc.straightness > 1e-2


def test_sample_all_three():
    rep = sample_class(EuclideanGeneral(1.0, 0.0))
    assert rep.sampled == frozenset({S, T, L}) and rep.agreement


def test_report_dict_shape():
    d = sample_class(EuclideanGeneral(1.0, 3.0), Grid((0.1, 2.0, 10), (0.0, 6.0, 20))).as_dict()
    assert d["predicted"] == ["spacelike"] and d["agreement"] is True and d["loci"] == []
    assert set(d) == {"family", "params", "clause", "predicted", "sampled", "agreement", "loci", "notes"}


def test_grid_validation():
    with pytest.raises(InvalidParams):
        Grid((1.0, 0.0, 10), (0.0, 1.0, 10))


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_clause_spot_check(name):
    # the acceptance suite runs 50 points per clause; here a quick subset
    for f in clause_params(name, 50)[:3]:
        rep = sample_class(f)
        assert rep.predicted == frozenset(EXPECTED[name]), (name, f)
        assert rep.agreement, (name, f, rep.sampled)


def test_rotational_control():
    res = rotational_check(Parabola("gen-zero", 0.0, 0.0, 0.0, 0.0, allow_rotational=True))
    assert res.rotational and res.max_deviation < 1e-8


@pytest.mark.parametrize(
    "t", [Parabola("gen-zero", 0.0, 1.0, 0.0, 0.0), Parabola("singular", -2.0, 0.0, 0.0, -1.0)]
)
def test_rotational_rejects(t):
    res = rotational_check(t)
    assert not res.rotational and res.max_deviation > 1e-3


def test_rotational_check_type():
    with pytest.raises(InvalidParams):
        rotational_check(EuclideanSingular(1.0))
