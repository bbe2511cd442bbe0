from fractions import Fraction
import math

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
import pytest
import sgic


def test_constellation():
    c = sgic.pam.PamConstellation(0.5, 2)
    assert_array_equal(sgic.pam.indices(c), [-2, -1, 0, 1, 2])
    assert_allclose(sgic.pam.points(c), [-1, -0.5, 0, 0.5, 1])
    assert sgic.pam.min_distance(c) == 0.5


invalid_constellation_data = [
    (0.5, 0),
    (0.5, 1.5),
    (0.5, True),
    (0, 2),
    (-1, 2),
]


@pytest.mark.parametrize('xi, Q', invalid_constellation_data)
def test_constellation_invalid(xi, Q):
    with pytest.raises(ValueError):
        sgic.pam.PamConstellation(xi, Q)


@pytest.mark.parametrize('Q', [1, 2, 7, 100])
def test_average_power(Q):
    c = sgic.pam.PamConstellation(Fraction(1, 3), Q)
    power = sgic.pam.average_power(c)
    assert isinstance(power, Fraction)
    assert_allclose(float(power), np.mean(sgic.pam.points(c)**2))


@pytest.mark.parametrize('Q', range(1, 201))
def test_average_power_exact(Q):
    c = sgic.pam.PamConstellation(Fraction(1, Q), Q)
    mean = sum(Fraction(a, Q)**2 for a in range(-Q, Q + 1)) / (2 * Q + 1)
    assert sgic.pam.average_power(c) == mean
    assert mean == Fraction(Q + 1, 6 * Q) * 2
    # the unit power constraint holds with xi = 1 / (sqrt(2) Q)
    c = sgic.pam.PamConstellation(1 / (math.sqrt(2) * Q), Q)
    power = sgic.pam.average_power(c)
    if Q == 1:
        assert_allclose(power, 1 / 3)
    else:
        assert power < 1 / 3


slicer_data = [
    (0.49, 0),
    (0.5, 0),
    (0.51, 1),
    (-0.5, -1),
    (-0.51, -1),
    (1.7, 2),
    (7, 2),
    (-7, -2),
]


@pytest.mark.parametrize('observed, expected', slicer_data)
def test_slicer(observed, expected):
    c = sgic.pam.PamConstellation(1, 2)
    a = sgic.pam.slicer(c, observed)
    assert isinstance(a, int)
    assert a == expected


def test_slicer_array():
    c = sgic.pam.PamConstellation(0.25, 3)
    points = sgic.pam.points(c)
    rng = sgic.util.rng_stream(1)
    jitter = rng.uniform(-0.12, 0.12, size=points.shape)
    a = sgic.pam.slicer(c, points + jitter)
    assert_array_equal(a, sgic.pam.indices(c))
    assert a.dtype == np.int64


q_function_data = [
    (0, 0.5),
    (1.959963984540054, 0.025),
    (-1.959963984540054, 0.975),
    (np.inf, 0),
]


@pytest.mark.parametrize('a, expected', q_function_data)
def test_q_function(a, expected):
    assert_allclose(sgic.pam.q_function(a), expected, atol=1e-12)


def test_lemma1_params():
    c = sgic.pam.lemma1_params('0.4', 2, 0.5, 1, 10)
    assert c == (0.0625, 8)
    # the outermost point stays below gamma
    assert c.xi * c.Q <= 0.5


params_invalid_data = [
    (0, 1.5, 0.5, 1, 10),
    ('1/2', 1.5, 0, 1, 10),
    ('1/2', 1.5, 0.8, 1, 10),
    ('1/2', 1.5, 0.5, 0, 10),
    ('1/2', 1.5, 0.5, 100, 2),
]


@pytest.mark.parametrize('args', params_invalid_data)
def test_lemma1_params_invalid(args):
    with pytest.raises(ValueError):
        sgic.pam.lemma1_params(*args)


def test_lemma1_error_bound_saturates():
    c = sgic.pam.PamConstellation(0.1, 4)
    assert sgic.pam.lemma1_error_bound(c, 0, 1, 1.5, 1, 1, 10) == 1.0


@pytest.mark.parametrize('m', [4, 6, 8])
def test_single_symbol_error_within_bound(m):
    gamma = 1 / math.sqrt(2)
    c = sgic.pam.lemma1_params('1/2', 1.5, gamma, 1, m)
    stats = sgic.sim.symbol_error_trials(c, 1, 0, 1.5, 1, 2, m, 100000,
                                         seed=5)
    assert stats.n_trials == 100000
    assert stats.ci_low <= stats.bound + 1e-12
    assert stats.ci_low - 1e-12 <= stats.ser <= stats.ci_high


def test_single_symbol_error_trend():
    gamma = 1 / math.sqrt(2)
    sers = []
    for m in 4, 6, 8:
        c = sgic.pam.lemma1_params('1/2', 1.5, gamma, 1, m)
        assert c.Q == 2**(m // 2 - 1)
        stats = sgic.sim.symbol_error_trials(c, 1, 0, 1.5, 1, 2, m, 100000,
                                             seed=5)
        sers.append(stats.ser)
    assert sers[0] > sers[1] >= sers[2]
    assert sers[2] == 0
