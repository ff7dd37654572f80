import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slitwave.classical import classical_intensity, classical_params, grating_ratio
from slitwave.core import ValidationError

LAMBDA = 6.328e-7
A, PITCH = 0.88e-4, 3.52e-4
D = 2.64e-4


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_on_axis_is_n_squared(n):
    assert classical_intensity(0.0, A, D, n, LAMBDA, I0=2.5) == pytest.approx(2.5 * n * n, rel=1e-15)


def test_first_envelope_zero_single_slit():
    theta = math.asin(LAMBDA / A)
    assert classical_intensity(theta, A, 0.0, 1, LAMBDA) < 1e-30


def test_fourth_order_is_missing():
    theta = math.asin(4 * LAMBDA / PITCH)
    assert classical_intensity(theta, A, D, 2, LAMBDA) < 1e-28
    # neighbouring orders survive
    for j in (3, 5):
        assert classical_intensity(math.asin(j * LAMBDA / PITCH), A, D, 2, LAMBDA) > 1e-3


def test_params_ratio():
    p = classical_params(0.003, A, D, LAMBDA)
    assert p.gamma_cl / p.beta_cl == pytest.approx(PITCH / A, rel=1e-15)


def _direct(theta, a, d, n, lam):
    b = a * math.pi * math.sin(theta) / lam
    g = (a + d) * math.pi * math.sin(theta) / lam
    return (math.sin(b) / b) ** 2 * (math.sin(n * g) / math.sin(g)) ** 2


@given(st.floats(1e-5, 0.05), st.integers(1, 9))
def test_matches_direct_formula_away_from_singularities(theta, n):
    g = PITCH * math.pi * math.sin(theta) / LAMBDA
    if abs(math.sin(g)) < 1e-3:
        return
    assert classical_intensity(theta, A, D, n, LAMBDA) == pytest.approx(
        _direct(theta, A, D, n, LAMBDA), rel=1e-9, abs=1e-12)


@given(st.floats(-0.05, 0.05), st.integers(1, 9))
def test_even(theta, n):
    assert classical_intensity(theta, A, D, n, LAMBDA) == classical_intensity(-theta, A, D, n, LAMBDA)


@pytest.mark.parametrize("n", [2, 3, 6])
@pytest.mark.parametrize("j", [1, 2, 3, 5])
def test_principal_maxima(n, j):
    s = j * LAMBDA / PITCH
    assert grating_ratio(s, PITCH, n, LAMBDA) ** 2 == pytest.approx(n * n, rel=1e-9)
    eps = 1e-4 * LAMBDA / PITCH
    for side in (s - eps, s + eps):
        assert grating_ratio(side, PITCH, n, LAMBDA) ** 2 < n * n


@pytest.mark.parametrize("n", [2, 5])
@pytest.mark.parametrize("j", [0, 1, 3])
def test_limit_continuity(n, j):
    s = j * LAMBDA / PITCH
    theta = math.asin(s)
    limit = classical_intensity(theta, A, D, n, LAMBDA)
    for dt in (1e-10, -1e-10):
        assert classical_intensity(theta + dt, A, D, n, LAMBDA) == pytest.approx(limit, rel=1e-6)


def test_vectorised():
    th = np.linspace(-0.01, 0.01, 11)
    out = classical_intensity(th, A, D, 3, LAMBDA)
    assert out.shape == (11,)
    assert out[5] == pytest.approx(9.0)


def test_invalid():
    with pytest.raises(ValidationError):
        classical_intensity(0.0, -A, D, 2, LAMBDA)
    with pytest.raises(ValidationError):
        classical_intensity(0.0, A, D, 0, LAMBDA)
    with pytest.raises(ValidationError):
        classical_intensity(0.0, A, D, 2, 0.0)
