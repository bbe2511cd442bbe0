import math

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
import pytest
import sgic

H = [[1.5, 1.2], [1.1, 1.3]]
GAMMA = sgic.scheme.GAMMA_MAX


def brute_force_values(space):
    (lo0, hi0), (lo1, hi1), (lo2, hi2) = space.ranges
    q = np.mgrid[lo0:hi0 + 1, lo1:hi1 + 1, lo2:hi2 + 1].reshape(3, -1)
    return q, space.value(*q)


def test_lattice_search_space():
    space = sgic.decoder.LatticeSearchSpace(2, 3, 9, 1.3, 1.7, 1.1)
    assert space.ranges == ((-2, 2), (-4, 4), (-2, 2))
    assert space.size == 5 * 9 * 5
    assert_allclose(space.value(1, -1, 2), 1.3 - 3 * 1.7 + 18 * 1.1)


invalid_space_data = [
    (0, 1, 1, 1, 1, 1),
    (1, 1.5, 1, 1, 1, 1),
    (1, 1, 0, 1, 1, 1),
    (1, 1, 1, 0, 1, 1),
]


@pytest.mark.parametrize('args', invalid_space_data)
def test_lattice_search_space_invalid(args):
    with pytest.raises(ValueError):
        sgic.decoder.LatticeSearchSpace(*args)


def test_joint_lattice_decode_scalar():
    space = sgic.decoder.LatticeSearchSpace(1, 1, 1, 1, 10, 100)
    assert sgic.decoder.joint_lattice_decode(10.2, space, 1) == (0, 1, 0)
    assert sgic.decoder.joint_lattice_decode(-1e9, space, 1) == (-1, -2, -1)
    triple = sgic.decoder.joint_lattice_decode(2 * 111.4, space, 2)
    assert triple == (1, 1, 1)
    assert all(isinstance(q, int) for q in triple)


def test_joint_lattice_decode_matches_brute_force():
    space = sgic.decoder.LatticeSearchSpace(2, 3, 9, 1.3, 1.7, 1.1)
    q, values = brute_force_values(space)
    rng = sgic.util.rng_stream(4)
    y = rng.uniform(values.min() - 1, values.max() + 1, size=500)
    q0, q1, q2 = sgic.decoder.joint_lattice_decode(y, space, 1)
    nearest = np.abs(y[:, np.newaxis] - values).min(axis=1)
    assert_allclose(np.abs(y - space.value(q0, q1, q2)), nearest)


def test_joint_lattice_decode_exact_points():
    space = sgic.decoder.LatticeSearchSpace(
        2, 3, 9, math.sqrt(2), math.sqrt(3), math.pi / 2)
    q, values = brute_force_values(space)
    q0, q1, q2 = sgic.decoder.joint_lattice_decode(values * 0.5, space, 0.5)
    assert_array_equal(np.array([q0, q1, q2]), q)


def test_budget():
    space = sgic.decoder.LatticeSearchSpace(
        3, 2, 4, math.sqrt(2), math.sqrt(3), math.sqrt(5))
    sgic.default.enumeration_budget = 100
    try:
        with pytest.raises(sgic.decoder.BudgetExceededError):
            sgic.decoder.joint_lattice_decode(0.0, space, 1)
        with pytest.raises(ValueError):
            sgic.decoder.min_distance(space)
    finally:
        sgic.default.reset()
    assert sgic.decoder.min_distance(space) > 0


min_distance_data = [
    (1, 1, 1, 1, 10, 100),
    (2, 3, 9, 1.3, 1.7, 1.1),
    (2, 2, 4, math.sqrt(2) * math.sqrt(3), 1.5 * math.e / 2, 1.9),
    (3, 4, 16, 1.3 * 1.1, 1.3 * 1.5, 1.5 * 1.2),
    (2, 2, 4, 1, 1, 1),
]


@pytest.mark.parametrize('args', min_distance_data)
def test_min_distance_matches_brute_force(args):
    space = sgic.decoder.LatticeSearchSpace(*args)
    _, values = brute_force_values(space)
    expected = np.diff(np.sort(values)).min()
    assert_allclose(sgic.decoder.min_distance(space), expected, atol=1e-12)
    assert_allclose(sgic.decoder.min_distance(space, symmetric=False),
                    expected, atol=1e-12)


def test_min_distance_degenerate():
    space = sgic.decoder.LatticeSearchSpace(2, 2, 4, 2, 1, 1)
    assert sgic.decoder.min_distance(space) == 0


def test_lattice_space():
    sc = sgic.scheme.build_config('17/20', epsilon='7/50')
    space = sgic.decoder.lattice_space(sc, H, 20)
    assert space == (7, 8, 64, 1.2 * 1.1, 1.2 * 1.5, 1.5 * 1.3)
    space2 = sgic.decoder.lattice_space(sc, H, 20, user=2)
    assert_allclose(space2[3:], (1.1 * 1.2, 1.1 * 1.3, 1.3 * 1.5))


def test_lattice_space_regime_c():
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    space = sgic.decoder.lattice_space(sc, H, 10)
    assert space.Qmax == 2
    assert (space.A1, space.A2) == (4, 16)
    assert_allclose(space[3:], (1.5 * 1.3, 1.2 * 1.5, 1.2 * 1.1))


def test_lattice_space_invalid():
    sc = sgic.scheme.build_config('0.7', epsilon='0.01')
    with pytest.raises(ValueError):
        sgic.decoder.lattice_space(sc, H, 40)
    sc = sgic.scheme.build_config('17/20', epsilon='7/50')
    with pytest.raises(ValueError, match='try m'):
        sgic.decoder.lattice_space(sc, H, 21)
    with pytest.raises(ValueError):
        sgic.decoder.lattice_space(sc, H, 20, user=3)


def test_lattice_scale():
    sc = sgic.scheme.build_config('17/20', epsilon='7/50')
    assert_allclose(sgic.decoder.lattice_scale(sc, 20), 2**14 * 2 * GAMMA / 7)
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    assert_allclose(sgic.decoder.lattice_scale(sc, 10), 2**8 * 2 * GAMMA / 2)
    sc = sgic.scheme.build_config('17/10', epsilon='1/5')
    with pytest.raises(ValueError):
        sgic.decoder.lattice_scale(sc, 10)


def transmit_symbols(sc, h, m, seed, n, noise=False):
    rng = sgic.util.rng_stream(seed)
    symbols1 = sgic.scheme.draw_symbols(sc, m, rng, n)
    symbols2 = sgic.scheme.draw_symbols(sc, m, rng, n)
    z = sgic.channel.sample_noise(rng, (2, n)) if noise else np.zeros((2, n))
    cfg = sgic.channel.SymmetricChannel(m, sc.alpha, h).expand()
    y1, y2 = sgic.channel.transmit(
        cfg, sgic.scheme.encode(1, sc, h, m, symbols1),
        sgic.scheme.encode(2, sc, h, m, symbols2), z[0], z[1])
    return (y1, symbols1, symbols2), (y2, symbols2, symbols1)


def assert_exact(result, own, other):
    assert_array_equal(result.v_c, own.v_c)
    if own.v_p is None:
        assert result.v_p is None
    else:
        assert_array_equal(result.v_p, own.v_p)
    assert_array_equal(result.aligned, other.v_c + own.u)
    assert_array_equal(result.jam, other.u)


def test_successive_decode_A_zero_noise():
    sc = sgic.scheme.build_config('7/10', epsilon='0.08')
    for user, (y, own, other) in enumerate(
            transmit_symbols(sc, H, 40, 1, 1000), start=1):
        result = sgic.decoder.decode(user, y, sc, H, 40)
        assert_exact(result, own, other)
        assert all(np.all(flag) for flag in result.reliable)


def test_successive_decode_D_zero_noise():
    sc = sgic.scheme.build_config('17/10', epsilon='1/5')
    for user, (y, own, other) in enumerate(
            transmit_symbols(sc, H, 20, 2, 1000), start=1):
        result = sgic.decoder.decode(user, y, sc, H, 20)
        assert_exact(result, own, other)
        assert result.reliable.v_p is None
        assert np.all(result.reliable.v_c)


@pytest.mark.parametrize('m', [5, 10, 20])
def test_lattice_decode_C_zero_noise(m):
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    for user, (y, own, other) in enumerate(
            transmit_symbols(sc, H, m, 3, 500), start=1):
        space = sgic.decoder.lattice_space(sc, H, m, user=user)
        assert sgic.decoder.min_distance(space) > 1e-6
        result = sgic.decoder.decode(user, y, sc, H, m)
        assert_exact(result, own, other)


def non_outage_phases(sc, m, delta, seed):
    """First random phase draw outside the outage sets of both receivers."""
    rng = sgic.util.rng_stream(seed, 9)
    while True:
        h = sgic.channel.random_phases(rng)
        if not any(sgic.decoder.outage_test(h, sc.alpha, delta, sc.epsilon,
                                            m, gamma=sc.gamma, user=user)
                   for user in (1, 2)):
            return h


def test_lattice_decode_B_zero_noise():
    # at m = 40 the outage threshold exceeds twice the private interference
    sc = sgic.scheme.build_config('17/20', epsilon='7/50')
    m = 40
    rng = sgic.util.rng_stream(7, 7)
    checked = 0
    for i in range(40):
        h = sgic.channel.random_phases(rng)
        if any(sgic.decoder.outage_test(h, '17/20', '1/10', '7/50', m,
                                        user=user) for user in (1, 2)):
            continue
        checked += 1
        for user, (y, own, other) in enumerate(
                transmit_symbols(sc, h, m, i, 200), start=1):
            assert_exact(sgic.decoder.decode(user, y, sc, h, m), own, other)
    assert checked >= 30


def test_lattice_decode_B_fixed_phases():
    h = [[math.sqrt(2), math.sqrt(3)], [(1 + math.sqrt(5)) / 2, math.e / 2]]
    sc = sgic.scheme.build_config('17/20', epsilon='7/50')
    (y, own, other), _ = transmit_symbols(sc, h, 40, 8, 300)
    result = sgic.decoder.decode(1, y, sc, h, 40)
    if not sgic.decoder.outage_test(h, '17/20', '1/10', '7/50', 40):
        assert_exact(result, own, other)
    assert result.v_p.shape == (300,)
    assert result.reliable.v_p.shape == (300,)


def test_joint_lattice_decode_large_box():
    space = sgic.decoder.LatticeSearchSpace(
        100, 3, 9, math.sqrt(2), math.sqrt(3), math.pi / 2)
    rng = sgic.util.rng_stream(3, 3)
    q = [rng.integers(lo, hi, size=1000, endpoint=True)
         for lo, hi in space.ranges]
    decoded = sgic.decoder.joint_lattice_decode(
        3 * space.value(*q), space, 3)
    assert_array_equal(np.array(decoded), np.array(q))


def test_joint_lattice_decode_shape():
    space = sgic.decoder.LatticeSearchSpace(2, 3, 9, 1.3, 1.7, 1.1)
    y = np.linspace(-50, 50, 12).reshape(3, 4)
    q0, q1, q2 = sgic.decoder.joint_lattice_decode(y, space, 1)
    assert q0.shape == q1.shape == q2.shape == (3, 4)
    flat = sgic.decoder.joint_lattice_decode(y.ravel(), space, 1)
    assert_array_equal(q1.ravel(), flat[1])


def test_residual_private_decode():
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    with pytest.raises(ValueError):
        sgic.decoder.residual_private_decode(0.0, (0, 0, 0), sc, H, 10)


def test_decode_scalar():
    sc = sgic.scheme.build_config('17/10', epsilon='1/5')
    result = sgic.decoder.decode(1, 0.0, sc, H, 20)
    assert (result.v_c, result.aligned, result.jam) == (0, 0, 0)
    assert result.reliable.v_c is True


def test_decoder_regime_mismatch():
    sc = sgic.scheme.build_config('17/10', epsilon='1/5')
    with pytest.raises(ValueError):
        sgic.decoder.successive_decode_A(0.0, sc, H, 20)
    sc = sgic.scheme.build_config('7/10', epsilon='0.08')
    with pytest.raises(ValueError):
        sgic.decoder.successive_decode_D(0.0, sc, H, 40)
    with pytest.raises(ValueError):
        sgic.decoder.decode(3, 0.0, sc, H, 40)


def test_unreliable_stage():
    sc = sgic.scheme.build_config('17/10', epsilon='1/5')
    # far outside the constellation: the first residual is too large
    result = sgic.decoder.decode(1, 1e15, sc, H, 20)
    assert result.reliable == (False, None, False, False)


outage_threshold_data = [
    ('17/20', '1/10', 20, 0.1 * 2**(-16 / 3)),
    ('6/5', '1/10', 10, 0.1 * 2**-4),
]


@pytest.mark.parametrize('alpha, delta, m, expected', outage_threshold_data)
def test_outage_threshold(alpha, delta, m, expected):
    assert_allclose(sgic.decoder.outage_threshold(alpha, delta, m), expected)


def test_outage_threshold_invalid():
    with pytest.raises(ValueError):
        sgic.decoder.outage_threshold('0.7', '0.1', 40)
    with pytest.raises(ValueError):
        sgic.decoder.outage_threshold('1.7', '0.1', 40)


def test_outage_test():
    flag = sgic.decoder.outage_test(H, '6/5', '1/10', '3/10', 10)
    assert isinstance(flag, (bool, np.bool_))
    # a zero minimum distance is always in outage
    h = [[1.5, 1.5], [1.5, 1.5]]
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    assert sgic.decoder.min_distance(
        sgic.decoder.lattice_space(sc, h, 10)) == 0
    assert sgic.decoder.outage_test(h, '6/5', '1/10', '3/10', 10)


def test_outage_test_second_receiver():
    # 5 A1 g1 = 2 A2 g2 holds at receiver 2 only
    h = [[1.5, 1.25], [math.sqrt(2), 2.0]]
    args = h, '6/5', '1/10', '3/10', 10
    assert not sgic.decoder.outage_test(*args)
    assert not sgic.decoder.outage_test(*args, user=1)
    assert sgic.decoder.outage_test(*args, user=2)
    sc = sgic.scheme.build_config('6/5', epsilon='3/10')
    space = sgic.decoder.lattice_space(sc, h, 10)
    assert sgic.decoder.min_distance(space) > 0.2


def test_outage_threshold_holds_outside_outage():
    sc = sgic.scheme.build_config('17/20', epsilon='1/10')
    rng = sgic.util.rng_stream(2, 2)
    threshold = sgic.decoder.outage_threshold('17/20', '1/10', 20)
    for _ in range(20):
        h = sgic.channel.random_phases(rng)
        d = sgic.decoder.min_distance(sgic.decoder.lattice_space(sc, h, 20))
        in_outage = sgic.decoder.outage_test(h, '17/20', '1/10', '1/10', 20)
        assert in_outage == (d < threshold)


def test_outage_fraction_trend():
    estimates = [
        sgic.decoder.outage_measure_estimate(
            '17/20', '1/10', '1/10', m, 200, sgic.util.rng_stream(5, 2))
        for m in (20, 40)]
    assert all(e.n_samples == 200 for e in estimates)
    assert (estimates[1].fraction <= estimates[0].fraction
            or estimates[1].ci_low <= estimates[0].ci_high)
    # the analytic measure bound is vacuous at these powers
    assert all(e.analytic_bound == 1 for e in estimates)


def test_outage_measure_bound():
    assert sgic.decoder.outage_measure_bound('0.1', '0.3', 10) == 1
    assert_allclose(sgic.decoder.outage_measure_bound('0.1', '1/2', 100),
                    25804.8 * 2.0**-50)


def test_outage_measure_estimate():
    args = '6/5', '1/10', '3/10', 10, 30
    estimate = sgic.decoder.outage_measure_estimate(
        *args, sgic.util.rng_stream(1, 2))
    assert estimate.n_samples == 30
    assert 0 <= estimate.fraction <= 1
    assert estimate.outages == round(estimate.fraction * 30)
    assert estimate.ci_low - 1e-12 <= estimate.fraction
    assert estimate.fraction <= estimate.ci_high + 1e-12
    assert estimate.analytic_bound == 1
    again = sgic.decoder.outage_measure_estimate(
        *args, sgic.util.rng_stream(1, 2))
    assert again == estimate
    with pytest.raises(ValueError):
        sgic.decoder.outage_measure_estimate('6/5', '1/10', '3/10', 10, 0)


def test_lattice_error_bound():
    assert sgic.decoder.lattice_error_bound('6/5', GAMMA, '0.1', '0.3',
                                            10) == 1
    small = sgic.decoder.lattice_error_bound('0.9', GAMMA, '0.1', '0.3', 100)
    assert 0 <= small < 1e-12


@pytest.mark.parametrize('m', [25, 30, 35])
def test_lattice_error_bound_monte_carlo(m):
    alpha, epsilon, delta = '4/5', '3/20', 1
    sc = sgic.scheme.build_config(alpha, epsilon=epsilon)
    h = non_outage_phases(sc, m, delta, m)
    n = 2000
    (y, own, other), _ = transmit_symbols(sc, h, m, m, n, noise=True)
    jam, aligned, v_c = sgic.decoder.joint_lattice_decode(
        y, sgic.decoder.lattice_space(sc, h, m),
        sgic.decoder.lattice_scale(sc, m))
    wrong = (jam != other.u) | (aligned != other.v_c + own.u) | (
        v_c != own.v_c)
    bound = sgic.decoder.lattice_error_bound(alpha, sc.gamma, delta,
                                             epsilon, m)
    assert bound < 1e-6
    p = np.count_nonzero(wrong) / n
    assert p <= bound + 3 * math.sqrt(bound * (1 - bound) / n)
