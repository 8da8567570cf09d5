import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nullsim.lorentz import (
    CausalCharacter,
    as_vec3,
    causal_character,
    euclid_norm,
    is_zero,
    lorentz_cross,
    lorentz_dot,
)

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(coords, coords, coords).map(np.array)


def test_metric_hand_values():
    assert lorentz_dot(E1, E1) == -1.0
    assert lorentz_dot((1, 1, 0), (1, 1, 0)) == 0.0
    assert lorentz_dot((3, 5, 0), (2, 1, 0)) == -1.0


def test_basis_cross_table_exact():
    assert np.array_equal(lorentz_cross(E1, E2), -E3)
    assert np.array_equal(lorentz_cross(E2, E3), E1)
    assert np.array_equal(lorentz_cross(E3, E1), -E2)


def test_batched_operations():
    x = np.random.default_rng(0).normal(size=(16, 3))
    y = np.random.default_rng(1).normal(size=(16, 3))
    dots = lorentz_dot(x, y)
    crosses = lorentz_cross(x, y)
    assert dots.shape == (16,)
    assert crosses.shape == (16, 3)
    for i in range(16):
        assert dots[i] == lorentz_dot(x[i], y[i])
        assert np.array_equal(crosses[i], lorentz_cross(x[i], y[i]))


@given(vec3, vec3)
def test_dot_symmetry(x, y):
    assert lorentz_dot(x, y) == lorentz_dot(y, x)


@given(vec3, vec3, coords, coords)
def test_dot_bilinearity(x, y, a, b):
    lhs = lorentz_dot(a * x + b * y, x)
    rhs = a * lorentz_dot(x, x) + b * lorentz_dot(y, x)
    scale = max(1.0, abs(lhs), abs(rhs))
    assert abs(lhs - rhs) <= 1e-9 * scale


@given(vec3, vec3)
def test_cross_antisymmetry(x, y):
    assert np.array_equal(lorentz_cross(x, y), -lorentz_cross(y, x))


@given(vec3)
def test_cross_with_self_vanishes(x):
    assert np.array_equal(lorentz_cross(x, x), np.zeros(3))


def test_cross_orthogonality_bulk():
    rng = np.random.default_rng(42)
    x = rng.uniform(-1.0, 1.0, size=(10_000, 3))
    y = rng.uniform(-1.0, 1.0, size=(10_000, 3))
    c = lorentz_cross(x, y)
    assert np.max(np.abs(lorentz_dot(c, x))) <= 1e-12
    assert np.max(np.abs(lorentz_dot(c, y))) <= 1e-12


def test_causal_characters():
    assert causal_character(E1) is CausalCharacter.TIMELIKE
    assert causal_character((1, 1, 0)) is CausalCharacter.NULL
    assert causal_character((0, 0, 0)) is CausalCharacter.SPACELIKE
    assert causal_character(E2) is CausalCharacter.SPACELIKE
    assert causal_character((5, 3, 4)) is CausalCharacter.NULL


@given(vec3)
def test_classification_exhaustive_and_exclusive(v):
    kinds = [causal_character(v, eps_null=1e-9, relative=rel) for rel in (False, True)]
    for k in kinds:
        assert k in CausalCharacter


def test_relative_classification_scales():
    v = 1e5 * np.array([1.0, 1.0, 0.0]) + np.array([1e-7, 0.0, 0.0])
    # absolute tolerance sees a timelike perturbation, relative one does not
    assert causal_character(v, eps_null=1e-9) is CausalCharacter.TIMELIKE
    assert causal_character(v, eps_null=1e-9, relative=True) is CausalCharacter.NULL


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        causal_character(E1, eps_null=0.0)


def test_zero_vector_predicate():
    assert is_zero((0, 0, 0))
    assert not is_zero(E1)


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        as_vec3((np.nan, 0, 0))
    with pytest.raises(ValueError):
        as_vec3((np.inf, 0, 0))
    with pytest.raises(ValueError):
        as_vec3((1, 2))


def test_euclid_norm():
    assert euclid_norm((3, 4, 0)) == 5.0
