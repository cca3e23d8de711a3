from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_zmc.errors import InvalidParams, NotLightlike
from riemann_zmc.minkowski import (
    AxisKind,
    CausalCharacter,
    Isometry,
    Vector3L,
    causal_character,
    form_defect,
    lorentz_cross,
    lorentz_dot,
    null_normalizing_isometry,
    one_parameter_isometry,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vectors = st.tuples(finite, finite, finite)

S, T, L = CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE, CausalCharacter.LIGHTLIKE


@pytest.mark.parametrize(
    "u, v, expected",
    [((1, 0, 0), (1, 0, 0), 1.0), ((0, 0, 1), (0, 0, 1), -1.0), ((0, 1, 1), (0, 1, 1), 0.0),
     ((1, 2, 3), (4, 5, 6), 4 + 10 - 18)],
)
def test_lorentz_dot_examples(u, v, expected):
    assert lorentz_dot(u, v) == expected


@pytest.mark.parametrize(
    "v, expected",
    [((1, 0, 0), S), ((0, 0, 1), T), ((0, 1, 1), L), ((0, 0, 0), S), ((3, 4, 5), L), ((1, 1, 1), S)],
)
def test_causal_character_examples(v, expected):
    assert causal_character(v) is expected


def test_causal_character_tolerance_band():
    v = (0.0, 1.0, 1.0 + 1e-12)
    assert causal_character(v) is T
    assert causal_character(v, tol=1e-9) is L


@pytest.mark.parametrize(
    "u, v, expected",
    [((1, 0, 0), (0, 1, 0), (0, 0, -1)), ((0, 1, 0), (0, 0, 1), (1, 0, 0)), ((2, 3, 5), (2, 3, 5), (0, 0, 0))],
)
def test_lorentz_cross_examples(u, v, expected):
    assert tuple(lorentz_cross(u, v)) == pytest.approx(expected)


@settings(max_examples=200, deadline=None)
@given(vectors, vectors, vectors)
def test_cross_is_determinant(u, v, w):
    det = float(np.linalg.det(np.array([u, v, w])))
    scale = max(1.0, float(np.prod([np.linalg.norm(x) for x in (u, v, w)])))
    assert abs(lorentz_dot(lorentz_cross(u, v), w) - det) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(vectors, vectors)
def test_cross_norm_identity(u, v):
    w = lorentz_cross(u, v)
    lhs = lorentz_dot(w, w)
    rhs = -lorentz_dot(u, u) * lorentz_dot(v, v) + lorentz_dot(u, v) ** 2
    scale = max(1.0, (np.linalg.norm(u) * np.linalg.norm(v)) ** 2)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_vector_rejects_nonfinite():
    with pytest.raises(InvalidParams):
        Vector3L(math.nan, 0.0, 0.0)


def test_isometry_rejects_non_lorentz_matrix():
    with pytest.raises(InvalidParams):
        Isometry(np.diag([2.0, 1.0, 1.0]))


def test_half_turn_about_time_axis():
    iso = one_parameter_isometry(AxisKind.TIMELIKE, math.pi)
    assert iso.apply([1.0, 0.0, 0.0]) == pytest.approx([-1.0, 0.0, 0.0], abs=1e-15)


def test_boost_at_zero_is_identity():
    assert np.array_equal(one_parameter_isometry(AxisKind.SPACELIKE, 0.0).linear, np.eye(3))


def test_null_rotation_fixes_its_axis():
    iso = one_parameter_isometry(AxisKind.LIGHTLIKE, 1.0)
    assert iso.apply([0.0, 1.0, 1.0]) == pytest.approx([0.0, 1.0, 1.0], abs=1e-15)


@pytest.mark.parametrize("kind", list(AxisKind))
@settings(max_examples=50, deadline=None)
@given(a=st.floats(-3, 3), b=st.floats(-3, 3))
def test_group_law_and_form(kind, a, b):
    m = one_parameter_isometry(kind, a).linear @ one_parameter_isometry(kind, b).linear
    target = one_parameter_isometry(kind, a + b).linear
    assert np.abs(m - target).max() <= 1e-12 * max(1.0, float(np.abs(target).max()))
    assert form_defect(one_parameter_isometry(kind, a).linear) <= 1e-12 * max(
        1.0, float(np.abs(one_parameter_isometry(kind, a).linear).max()) ** 2)


@pytest.mark.parametrize("kind", list(AxisKind))
@settings(max_examples=50, deadline=None)
@given(theta=st.floats(-2, 2), v=vectors)
def test_causal_character_invariant(kind, theta, v):
    iso = one_parameter_isometry(kind, theta)
    w = iso.apply_vector(v)
    tol = 1e-9
    # skip vectors inside the band where rounding can flip the verdict
    if abs(lorentz_dot(v, v)) > 1e-6 * max(1.0, float(np.dot(v, v)) * float(np.abs(iso.linear).max()) ** 2):
        assert causal_character(w, tol) is causal_character(v, tol)


def test_null_normalizing_identity_case():
    iso = null_normalizing_isometry((0, 1, 1), (0, 0, 0))
    assert np.allclose(iso.linear, np.eye(3))
    assert np.allclose(iso.translation, 0)


def test_null_normalizing_quarter_turn():
    iso = null_normalizing_isometry((-1, 0, 1), (0, 0, 0))
    expected = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=float)
    assert np.allclose(iso.linear, expected, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(phi=st.floats(-math.pi, math.pi), scale=st.floats(-5, 5).filter(lambda s: abs(s) > 1e-3),
       p0=vectors)
def test_null_normalizing_maps_line_to_diagonal(phi, scale, p0):
    d = scale * np.array([math.cos(phi), math.sin(phi), 1.0])
    iso = null_normalizing_isometry(d, p0)
    img = iso.apply_vector(d)
    assert img[1] > 0
    assert abs(img[0]) <= 1e-10 * abs(img[1])
    assert abs(img[1] - img[2]) <= 1e-10 * abs(img[1])
    for s in (-2.0, 0.5, 3.0):
        q = iso.apply(np.asarray(p0) + s * d)
        unit = max(1.0, abs(s) * float(np.linalg.norm(d)))
        assert abs(q[0]) <= 1e-10 * unit and abs(q[1] - q[2]) <= 1e-10 * unit


@pytest.mark.parametrize("d", [(1, 0, 0), (0, 0, 0), (0, 1, 0), (0, 1, 2)])
def test_null_normalizing_rejects_non_null(d):
    # a null direction with t = 0 would be the zero vector, so it fails here too
    with pytest.raises(NotLightlike):
        null_normalizing_isometry(d, (0, 0, 0))
