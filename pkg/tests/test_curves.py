import numpy as np
import pytest

from nullsim import ParameterGrid, frame_curve, nullity_check
from nullsim.curves import AnalyticCurve, SampledCurve, helix_curve, line_curve
from nullsim.errors import DerivativeUnavailable, OutOfDomain, TooFewSamples

TWO_PI = 2 * np.pi


def test_helix_evaluate_frozen_values(h1):
    np.testing.assert_allclose(h1.evaluate(0.0, 1), [1.0, 0.0, 1.0], atol=0)
    np.testing.assert_allclose(h1.evaluate(0.0, 0), [0.0, 1.0, 0.0], atol=0)


def test_geodesic_evaluate():
    g1 = line_curve((0, 0, 0), (1, 1, 0), (0.0, 10.0))
    np.testing.assert_array_equal(g1.evaluate(7.0, 2), np.zeros(3))
    np.testing.assert_array_equal(g1.evaluate(1.0, 0), [1.0, 1.0, 0.0])


def test_domain_and_order_errors(h1):
    with pytest.raises(OutOfDomain):
        h1.evaluate(-1.0, 0)
    with pytest.raises(OutOfDomain):
        h1.evaluate(TWO_PI + 0.1, 0)
    with pytest.raises(DerivativeUnavailable):
        h1.evaluate(1.0, 4)
    with pytest.raises(DerivativeUnavailable):
        h1.evaluate(1.0, -1)
    # endpoint roundoff is tolerated
    h1.evaluate(TWO_PI + 1e-15, 0)


def test_grid_validation():
    with pytest.raises(ValueError):
        ParameterGrid([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        ParameterGrid([0.0, np.nan])
    g = ParameterGrid.uniform(0, 1, 11)
    assert len(g) == 11 and g.span == (0.0, 1.0)


def test_nullity_check_pass_and_fail(h1):
    grid = ParameterGrid.uniform(0, TWO_PI, 1000)
    rep = nullity_check(h1, grid, 1e-12)
    assert rep.passed and rep.max_residual <= 1e-13

    g1 = line_curve((0, 0, 0), (1, 1, 0), (0, 10))
    assert nullity_check(g1, ParameterGrid.uniform(0, 10, 100)).passed

    def e0(t):
        return np.stack([t, t, t], axis=-1)

    def e1(t):
        return np.ones((len(t), 3))

    def zero(t):
        return np.zeros((len(t), 3))

    not_null = AnalyticCurve([e0, e1, zero, zero], (0, 1))
    rep = nullity_check(not_null, ParameterGrid.uniform(0, 1, 50))
    assert not rep.passed
    assert rep.max_residual == pytest.approx(1.0)


def test_sampled_backend_matches_analytic(h1, h1_sampled, h1_grid):
    s = h1_grid.values
    for order in (1, 2, 3):
        dev = np.max(np.abs(h1_sampled.evaluate(s, order) - h1.evaluate(s, order)))
        assert dev <= 1e-6, (order, dev)
    # off-grid evaluation
    pts = np.array([0.1234, 1.777, 5.4321])
    for order in (0, 1, 2):
        dev = np.max(np.abs(h1_sampled.evaluate(pts, order) - h1.evaluate(pts, order)))
        assert dev <= 1e-6


def test_sampled_requires_enough_points():
    with pytest.raises(TooFewSamples):
        SampledCurve(ParameterGrid.uniform(0, 1, 4).values,
                     np.zeros((4, 3)))


def test_sampled_rejects_wild_grids():
    grid = np.array([0.0, 1e-4, 2e-4, 0.5, 1.0, 2.0])
    with pytest.raises(ValueError, match="vary too strongly"):
        SampledCurve(grid, np.zeros((6, 3)))


def test_sampled_downstream_error_is_fourth_order(h1):
    """Replacing analytic derivatives by sampled ones changes kappa by O(h^4).

    Steps are kept coarse enough for truncation to dominate roundoff.
    """
    errs = []
    for n in (64, 127):
        grid = ParameterGrid.uniform(0, TWO_PI, n)
        sampled = SampledCurve(grid, h1.evaluate(grid.values, 0))
        # coarse sampling carries O(h^4) nullity residual; loosen the gate
        fc = frame_curve(sampled, grid, eps_null=1e-2)
        errs.append(np.max(np.abs(fc.kappa[5:-5] + 1.0)))
    ratio = errs[0] / errs[1]
    assert 8.0 <= ratio <= 40.0, (errs, ratio)
