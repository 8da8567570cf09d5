import numpy as np
import pytest

from nullsim.errors import TooFewSamples
from nullsim.fd import derivative_stencil, evaluate_from_samples, fd_weights


def test_weights_reproduce_classic_central_stencils():
    h = 0.1
    nodes = h * np.arange(-2, 3)
    c = fd_weights(0.0, nodes, 2)
    np.testing.assert_allclose(c[:, 1] * h, [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12],
                               atol=1e-13)
    np.testing.assert_allclose(c[:, 2] * h * h, [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12],
                               atol=1e-12)


def test_sin_first_derivative_accuracy():
    h = 1e-3
    x = np.arange(0.0, 1.0 + h / 2, h)
    d = derivative_stencil(np.sin(x), x, 1)
    assert np.max(np.abs(d - np.cos(x))) <= 1e-9


def test_polynomials_are_differentiated_exactly():
    x = np.linspace(0.0, 2.0, 41)
    const = np.ones_like(x)
    lin = 3.0 * x + 1.0
    # thresholds track the 1/h^order roundoff amplification at h = 0.05
    for order, bound in ((1, 1e-12), (2, 1e-11), (3, 1e-9)):
        assert np.max(np.abs(derivative_stencil(const, x, order))) <= bound
    assert np.max(np.abs(derivative_stencil(lin, x, 2))) <= 1e-10
    assert np.max(np.abs(derivative_stencil(lin, x, 3))) <= 1e-9


@pytest.mark.parametrize("order", [1, 2, 3])
def test_fourth_order_convergence(order):
    """Halving the step divides the error by about 2^4.

    Grids are deliberately coarse so truncation error dominates the
    1/h^order roundoff amplification.
    """
    errs = []
    for n in (26, 51):
        x = np.linspace(0.0, 1.0, n)
        d = derivative_stencil(np.exp(x), x, order)
        # interior only: boundary one-sided stencils carry larger constants
        errs.append(np.max(np.abs(d - np.exp(x))[5:-5]))
    ratio = errs[0] / errs[1]
    assert 8.0 <= ratio <= 40.0, (errs, ratio)


def test_vector_samples_supported():
    x = np.linspace(0.0, 1.0, 101)
    samples = np.stack([np.sin(x), np.cos(x), x ** 2], axis=-1)
    d = derivative_stencil(samples, x, 1)
    expected = np.stack([np.cos(x), -np.sin(x), 2 * x], axis=-1)
    assert np.max(np.abs(d - expected)) <= 1e-8


def test_off_grid_evaluation():
    x = np.linspace(0.0, 1.0, 101)
    samples = np.sin(x)
    assert abs(evaluate_from_samples(x, samples, 0.4937, 0) - np.sin(0.4937)) <= 1e-11
    assert abs(evaluate_from_samples(x, samples, 0.4937, 1) - np.cos(0.4937)) <= 1e-7


def test_too_few_samples():
    x = np.linspace(0, 1, 4)
    with pytest.raises(TooFewSamples):
        derivative_stencil(np.sin(x), x, 1)


def test_nonuniform_grid_supported():
    # smoothly varying step: Chebyshev-like clustering
    u = np.linspace(0.0, np.pi, 201)
    x = 1.0 - np.cos(u / 2.0)
    d = derivative_stencil(np.exp(x), x, 1)
    assert np.max(np.abs(d - np.exp(x))) <= 1e-7
