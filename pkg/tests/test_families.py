from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_zmc.entire_graph import EntireGraph
from riemann_zmc.errors import InvalidParams, OutOfDomain
from riemann_zmc.families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
    Transformed,
    evaluate,
    maximal_domain,
    ode_residual,
    parabola_rfg,
    partials,
    profile_delta,
    profile_integrals,
)
from riemann_zmc.minkowski import AxisKind, Isometry, one_parameter_isometry

SAMPLE_FAMILIES = [
    EuclideanGeneral(1.0, 2.0),
    EuclideanGeneral(1.0, -3.0),
    EuclideanGeneral(0.7, 0.3),
    EuclideanSingular(2.0),
    HyperbolaGeneral("I", 1.0, 0.5, 1.0),
    HyperbolaGeneral("II", 0.0, 1.0, 1.0),
    HyperbolaGeneral("II", 0.5, -1.0, 0.2),
    HyperbolaSingular("I", 0.0, 1.0),
    HyperbolaSingular("II", 0.5, -1.5),
    Parabola("gen-zero", 0.0, 1.0, 0.2, 0.5),
    Parabola("gen-pos", 2.0, 0.5, 0.1, 1.0),
    Parabola("gen-neg", -1.0, 0.7, 0.0, -0.5),
    Parabola("singular", -2.0, 0.3, 0.0, -1.0),
    EntireGraph(-2.0, -1.0),
]
IDS = [f"{f.key}-{i}" for i, f in enumerate(SAMPLE_FAMILIES)]


def test_domain_whole_line():
    (iv,) = maximal_domain(EuclideanGeneral(1.0, 2.0))
    assert (iv.lo, iv.hi) == (-math.inf, math.inf)
    (iv,) = maximal_domain(Parabola("singular", -0.5, 1.0, 0.0, 2.0))
    assert (iv.lo, iv.hi) == (-math.inf, math.inf)


def test_domain_bounded_component():
    f = EuclideanGeneral(1.0, -3.0)
    comp = f.component()
    assert comp.hi**2 == pytest.approx((3 - math.sqrt(5)) / 2, rel=1e-12)
    assert comp.lo == -comp.hi
    assert len(maximal_domain(f)) == 3


@pytest.mark.parametrize(
    "f, s, expected",
    [(EuclideanGeneral(1.0, 2.0), 1.0, 2.0), (HyperbolaGeneral("II", 0.0, 1.0, 1.0), 0.5, 0.75)],
)
def test_profile_delta_examples(f, s, expected):
    assert profile_delta(f, s) == pytest.approx(expected, rel=1e-15)


def test_profile_delta_vanishes_at_boundary():
    f = EuclideanGeneral(1.0, -2.0)
    assert profile_delta(f, 1 - 1e-6) < 1e-5
    with pytest.raises(OutOfDomain):
        profile_delta(f, 1.0)


def test_profile_integrals_examples():
    assert profile_integrals(EuclideanGeneral(1.0, 2.0), 0.0) == (0.0, 0.0, 0.0)
    i0, ia, ib = profile_integrals(EuclideanGeneral(1.0, 2.0, r0=0.0), 1.0)
    assert i0 == pytest.approx(math.pi / 4, abs=1e-12)
    assert ib == pytest.approx(2 * ia)
    i0, _, _ = profile_integrals(HyperbolaGeneral("II", 0.0, 1.0, 1.0, r0=0.0), 0.5)
    assert i0 == pytest.approx(math.atanh(0.5), abs=1e-12)


def test_profile_integrals_rejects_bad_tol():
    with pytest.raises(InvalidParams):
        profile_integrals(EuclideanGeneral(1.0, 2.0), 0.5, tol=0.0)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(0.3, 2.0), r0=st.floats(-0.5, 0.5), theta=st.floats(0, 2 * math.pi))
def test_base_point_lies_on_circle(a, r0, theta):
    f = EuclideanGeneral(a, -0.5 * a, r0=r0)
    p = evaluate(f, r0, theta)
    assert (p.x, p.y, p.t) == pytest.approx((r0 * math.cos(theta), r0 * math.sin(theta), 0.0), abs=1e-15)


def test_singular_evaluate_examples():
    assert tuple(evaluate(EuclideanSingular(1.0), 0.0, 0.0)) == pytest.approx((1.0, 0.0, 0.0))
    assert tuple(evaluate(HyperbolaSingular("II", 0.0, 1.0), 0.0, 0.0)) == pytest.approx((0.0, 0.0, 1.0))


def test_partials_examples():
    _, xt = partials(EuclideanGeneral(1.0, 2.0), 1.0, math.pi)
    assert tuple(xt) == pytest.approx((0.0, -1.0, 0.0), abs=1e-15)
    _, xv = partials(Parabola("singular", -2.0, 0.0, 0.0, -1.0), 0.0, 0.0)
    assert tuple(xv) == pytest.approx((1.0, 0.0, 0.0))


def test_partials_order_check():
    with pytest.raises(InvalidParams):
        partials(EuclideanSingular(1.0), 0.0, 0.0, order=3)


def _interior_point(f, s1, s2):
    (lo1, hi1), (lo2, hi2) = f.default_window()
    return lo1 + (0.1 + 0.8 * s1) * (hi1 - lo1), lo2 + s2 * (hi2 - lo2)


@pytest.mark.parametrize("f", SAMPLE_FAMILIES, ids=IDS)
@settings(max_examples=15, deadline=None)
@given(s1=st.floats(0, 1), s2=st.floats(0, 1))
def test_partials_match_finite_differences(f, s1, s2):
    p1, p2 = _interior_point(f, s1, s2)
    h = 1e-5
    x1, x2, x11, x12, x22 = f.derivatives(p1, p2, order=2)
    d1 = (f.position(p1 + h, p2) - f.position(p1 - h, p2)) / (2 * h)
    d2 = (f.position(p1, p2 + h) - f.position(p1, p2 - h)) / (2 * h)
    d12 = (f.derivatives(p1, p2 + h)[0] - f.derivatives(p1, p2 - h)[0]) / (2 * h)
    d11 = (f.derivatives(p1 + h, p2)[0] - f.derivatives(p1 - h, p2)[0]) / (2 * h)
    d22 = (f.derivatives(p1, p2 + h)[1] - f.derivatives(p1, p2 - h)[1]) / (2 * h)
    for exact, approx in ((x1, d1), (x2, d2), (x11, d11), (x12, d12), (x22, d22)):
        scale = max(1.0, float(np.abs(exact).max()))
        assert np.abs(exact - approx).max() <= 1e-6 * scale


@pytest.mark.parametrize(
    "f, u, expected",
    [
        (Parabola("singular", -2.0, 0.0, 0.0, -1.0), 0.0, (1.0, 0.0, -1.0, 4.0)),
        (Parabola("gen-neg", -2.0, 0.0, 0.0, 0.0), -1.0, (math.tanh(2.0), 0.0, 0.0, 0.0)),
    ],
)
def test_parabola_rfg_examples(f, u, expected):
    assert parabola_rfg(f, u) == pytest.approx(expected, abs=1e-15)


def test_parabola_gen_zero_radius():
    assert parabola_rfg(Parabola("gen-zero", 0.0, 1.0, 0.0, 0.0), -0.5)[0] == 1.0


def test_parabola_pole_is_outside_domain():
    with pytest.raises(OutOfDomain):
        parabola_rfg(Parabola("gen-neg", -1.0, 1.0, 0.5, 0.0), 0.5)


@pytest.mark.parametrize(
    "make",
    [
        lambda: EuclideanGeneral(0.0, 1.0),
        lambda: EuclideanGeneral(-1.0, 1.0),
        lambda: EuclideanGeneral(1.0, math.nan),
        lambda: EuclideanGeneral(1.0, -3.0, r0=1.0),
        lambda: EuclideanSingular(-1.0),
        lambda: HyperbolaGeneral("II", 0.0, 0.0, 1.0),
        lambda: HyperbolaSingular("I", 1.0, 1.0),
        lambda: Parabola("gen-zero", 0.0, 0.0, 0.0, 1.0),
        lambda: Parabola("gen-pos", -1.0, 1.0, 0.0, 0.0),
        lambda: Parabola("gen-neg", 1.0, 1.0, 0.0, 0.0),
        lambda: Parabola("singular", 0.0, 1.0, 0.0, 0.0),
    ],
)
def test_invalid_parameters(make):
    with pytest.raises(InvalidParams):
        make()


def test_position_outside_domain():
    with pytest.raises(OutOfDomain):
        EuclideanGeneral(1.0, -3.0).position(0.9, 0.0)


@pytest.mark.parametrize(
    "f, at",
    [(EuclideanSingular(1.0), 0.0), (EuclideanGeneral(1.0, 2.0), 1.0), (Parabola("gen-pos", 2.0, 0.0, 0.0, 1.0), 0.1)],
)
def test_ode_residual_examples(f, at):
    assert ode_residual(f, at) < 1e-12


def test_gen_pos_radius_ode_by_finite_difference():
    f = Parabola("gen-pos", 2.0, 0.0, 0.0, 1.0)
    h = 1e-5
    r1 = (f.rfg(0.1 + h).r - f.rfg(0.1 - h).r) / (2 * h)
    assert abs(r1 - 2 * float(f.rfg(0.1).r) ** 2 - 2.0) < 1e-8


@pytest.mark.parametrize("f", SAMPLE_FAMILIES, ids=IDS)
def test_ode_residual_on_window(f):
    (lo, hi), _ = f.default_window()
    for at in np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 7):
        assert ode_residual(f, float(at)) < 1e-8


def test_ode_residual_needs_interior_point():
    with pytest.raises(OutOfDomain):
        ode_residual(Parabola("gen-neg", -1.0, 1.0, 0.5, 0.0), 0.5)


def test_transformed_copy():
    base = EuclideanGeneral(1.0, 2.0)
    iso = Isometry(one_parameter_isometry(AxisKind.TIMELIKE, 0.7).linear, np.array([1.0, -2.0, 0.5]))
    g = Transformed(base, iso)
    assert g.key == base.key and g.params() == base.params()
    assert np.allclose(g.position(0.8, 1.1), iso.apply(base.position(0.8, 1.1)))
    assert np.allclose(g.derivatives(0.8, 1.1)[1], iso.apply_vector(base.derivatives(0.8, 1.1)[1]))
    assert ode_residual(g, 0.5) == ode_residual(base, 0.5)
