"""Monte Carlo simulation of the jamming schemes.

Each trial is one channel use: both transmitters draw fresh symbols,
the signals pass the channel and both receivers decode with the
decoder of the regime.  Trials are grouped in blocks of
`sgic.default.block_size`, block *b* uses the random stream
``(seed, 1, b)``, so results do not depend on the number of workers.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
import concurrent.futures as _futures
import csv as _csv
from fractions import Fraction as _Fraction
import logging as _logging

import numpy as _np

from . import bounds as _bounds
from . import channel as _channel
from . import decoder as _decoder
from . import default as _default
from . import pam as _pam
from . import scheme as _scheme
from . import util as _util

_log = _logging.getLogger(__name__)

STREAMS = 'v1c', 'v1p', 'v2c', 'v2p'
"""Intended streams whose errors are counted."""

CSV_HEADER = ('alpha', 'm', 'n', 'ser_joint', 'ser_ci', 'gdof_est',
              'gdof_theorem', 'gdof_tin', 'gdof_nonsecure', 'outage_flag',
              'seed')
"""Columns of the sweep table."""

_PRECISION_LIMIT = 50


class TrialStats(_namedtuple('TrialStats', [
        'n_trials', 'errors_per_stream', 'ser_per_stream', 'joint_error',
        'user_error', 'seed', 'phases', 'outage', 'alpha', 'm', 'epsilon',
        'gamma'])):
    """Named tuple returned by `run_trials()`.

    See `collections.namedtuple`.

    Attributes
    ----------
    n_trials : int
        Number of channel uses.
    errors_per_stream, ser_per_stream : dict
        Error counts and rates of the streams in `STREAMS`.  Absent
        private streams have no errors.
    joint_error : float
        Fraction of channel uses with an error in any stream.
    user_error : (float, float)
        Fraction of channel uses where user 1 (user 2) decoded one of
        its own symbols wrongly.
    seed : int
        Seed of the run.
    phases : 2x2 tuple of float
        Channel phases of the run.
    outage : bool
        Whether the phases are in the outage set of either receiver
        (always ``False`` in regimes A and D).

    """

    __slots__ = ()


class RateEstimate(_namedtuple('RateEstimate', [
        'h_v_bits', 'ser', 'leakage_bits', 'rate_bits', 'gdof_estimate'])):
    """Named tuple returned by `rate_from_ser()`.

    See `collections.namedtuple`.

    """

    __slots__ = ()


class SweepRow(_namedtuple('SweepRow', CSV_HEADER)):
    """One row of `gdof_sweep()`."""

    __slots__ = ()


class SymbolErrorStats(_namedtuple('SymbolErrorStats', [
        'errors', 'n_trials', 'ser', 'ci_low', 'ci_high', 'bound'])):
    """Named tuple returned by `symbol_error_trials()`."""

    __slots__ = ()


def _run_block(sc, h, m, seed, block, count, zero_noise):
    """Error counts of one block of trials.

    Returns the counts of `STREAMS`, followed by the errors of user 1,
    user 2 and of both users jointly.

    """
    rng = _util.rng_stream(seed, 1, block)
    symbols1 = _scheme.draw_symbols(sc, m, rng, count)
    symbols2 = _scheme.draw_symbols(sc, m, rng, count)
    noise = _channel.sample_noise(rng, (2, count))
    if zero_noise:
        noise *= 0
    cfg = _channel.SymmetricChannel(m, sc.alpha, h).expand()
    x1 = _scheme.encode(1, sc, h, m, symbols1)
    x2 = _scheme.encode(2, sc, h, m, symbols2)
    y1, y2 = _channel.transmit(cfg, x1, x2, noise[0], noise[1])
    errors = []
    for user, y, sent in (1, y1, symbols1), (2, y2, symbols2):
        result = _decoder.decode(user, y, sc, h, m)
        errors.append(result.v_c != sent.v_c)
        if sent.v_p is None:
            errors.append(_np.zeros(count, dtype=bool))
        else:
            errors.append(result.v_p != sent.v_p)
    user1 = errors[0] | errors[1]
    user2 = errors[2] | errors[3]
    return _np.array([e.sum() for e in errors]
                     + [user1.sum(), user2.sum(), (user1 | user2).sum()])


def run_trials(alpha, m, *, epsilon=None, gamma=None, n=None, seed=None,
               phases=None, zero_noise=False, workers=None):
    """Simulate *n* channel uses of the jamming scheme.

    Parameters
    ----------
    alpha : rational
        Cross-link exponent, :math:`2/3 < \\alpha \\leq 2`.
    m : int
        Power exponent, :math:`P = 2^{2m}`.
    epsilon, gamma : optional
        Scheme parameters, see `sgic.scheme.build_config()`.
    n : int, optional
        Number of channel uses, see `sgic.default.n_trials`.
    seed : int, optional
        Seed of all random streams, see `sgic.default.seed`.
    phases : 2x2 array_like, optional
        Fixed channel phases.  By default they are drawn uniformly from
        :math:`(1, 2]^4` with the stream ``(seed, 0)``.
    zero_noise : bool, optional
        If ``True``, the noise samples are drawn, but not added.
    workers : int, optional
        Number of worker processes.  By default, all blocks are
        simulated in the calling process.

    Returns
    -------
    TrialStats

    Examples
    --------
    >>> import sgic
    >>> stats = sgic.sim.run_trials('1.7', 20, epsilon='0.2', n=100,
    ...                             phases=[[1.5, 1.2], [1.1, 1.3]],
    ...                             zero_noise=True)
    >>> stats.joint_error
    0.0

    """
    if n is None:
        n = _default.n_trials
    if seed is None:
        seed = _default.seed
    if n < 1:
        raise ValueError('n must be at least 1')
    sc = _scheme.build_config(alpha, epsilon=epsilon, gamma=gamma)
    _scheme.constellations(sc, m)
    if phases is None:
        phases = _channel.random_phases(_util.rng_stream(seed, 0))
    h = _channel.as_phases(phases)
    outage = False
    if sc.regime in ('B', 'C'):
        in_outage = [user for user in (1, 2) if _decoder.outage_test(
            h, sc.alpha, _default.delta, sc.epsilon, m, gamma=sc.gamma,
            user=user)]
        if in_outage:
            _log.info('phases %s are in the outage set of receiver %s',
                      h, ' and '.join(map(str, in_outage)))
        outage = bool(in_outage)
    if m * max(1, sc.alpha) > _PRECISION_LIMIT:
        _log.warning('received amplitudes exceed 2**%d, unit-variance noise '
                     'is below double precision resolution', _PRECISION_LIMIT)

    block_size = _default.block_size
    sizes = [min(block_size, n - start) for start in range(0, n, block_size)]
    args = [(sc, h, m, seed, block, count, zero_noise)
            for block, count in enumerate(sizes)]
    if workers is None or workers == 1:
        counts = [_run_block(*a) for a in args]
    else:
        with _futures.ProcessPoolExecutor(max_workers=workers) as executor:
            counts = list(executor.map(_run_block, *zip(*args)))
    counts = _np.sum(counts, axis=0)
    errors = {s: int(c) for s, c in zip(STREAMS, counts[:4])}
    return TrialStats(
        n_trials=n,
        errors_per_stream=errors,
        ser_per_stream={s: c / n for s, c in errors.items()},
        joint_error=int(counts[6]) / n,
        user_error=(int(counts[4]) / n, int(counts[5]) / n),
        seed=seed,
        phases=h,
        outage=outage,
        alpha=sc.alpha,
        m=m,
        epsilon=sc.epsilon,
        gamma=sc.gamma,
    )


def rate_from_ser(sc, m, ser):
    """Secure rate of one user for a given symbol error rate.

    .. math::

        R = (1 - \\text{ser}) H(v) - 1 - L

    where :math:`H(v)` is the entropy of the common and private symbol
    and :math:`L` is `sgic.scheme.leakage_upper_bits()`.

    Returns
    -------
    RateEstimate

    """
    if not 0 <= ser <= 1:
        raise ValueError('ser must lie in [0, 1]')
    cs = _scheme.constellations(sc, m)
    h_v = _scheme.entropy_bits(cs.v_c) + _scheme.entropy_bits(cs.v_p)
    leakage = _scheme.leakage_upper_bits(sc)
    rate = (1 - ser) * h_v - 1 - leakage
    return RateEstimate(h_v, ser, leakage, rate, max(0.0, rate) / m)


def secure_rate_estimate(stats, sc, m, *, user=1):
    """Secure rate estimate of *user* from simulated error rates.

    See `rate_from_ser()`.

    """
    if (stats.alpha, stats.m) != (sc.alpha, m):
        raise ValueError('trial statistics do not match the scheme')
    if user not in (1, 2):
        raise ValueError('user index must be 1 or 2')
    return rate_from_ser(sc, m, stats.user_error[user - 1])


def gdof_sweep(alphas, ms, *, n=None, seed=None, epsilon=None, gamma=None,
               phases=None, workers=None):
    """Estimate the secure sum GDoF on a grid of exponents.

    For :math:`\\alpha \\leq 2/3` the analytic GWC-TIN rates are used
    (``n`` is 0 in these rows), otherwise `run_trials()`.  Pairs where
    the scheme is infeasible (or :math:`\\alpha > 2`) are skipped with
    a warning.

    Parameters
    ----------
    alphas : sequence of rationals
        Cross-link exponents.
    ms : sequence of int
        Power exponents.

    Returns
    -------
    list of SweepRow

    """
    if seed is None:
        seed = _default.seed
    if phases is None:
        phases = _channel.random_phases(_util.rng_stream(seed, 0))
    rows = []
    for alpha in alphas:
        alpha = _util.as_rational(alpha)
        if alpha > 2:
            _log.warning('skipping alpha = %s: the secure GDoF is zero',
                         alpha)
            continue
        theorem = _bounds.theorem1_gdof(alpha)
        tin = _bounds.gwc_tin_gdof([[1, alpha], [alpha, 1]])
        nonsecure = _bounds.nonsecure_gdof(alpha)
        for m in ms:
            if alpha * 3 <= 2:
                cfg = _channel.SymmetricChannel(m, alpha, phases).expand()
                estimate = sum(_bounds.tin_lower_bound(cfg)) / m
                rows.append(SweepRow(alpha, m, 0, 0.0, 0.0, estimate,
                                     theorem, tin, nonsecure, False, seed))
                continue
            try:
                stats = run_trials(alpha, m, epsilon=epsilon, gamma=gamma,
                                   n=n, seed=seed, phases=phases,
                                   workers=workers)
            except ValueError as e:
                _log.warning('skipping alpha = %s, m = %d: %s', alpha, m, e)
                continue
            sc = _scheme.build_config(alpha, epsilon=epsilon, gamma=gamma)
            estimate = sum(secure_rate_estimate(stats, sc, m, user=k)
                           .gdof_estimate for k in (1, 2))
            errors = round(stats.joint_error * stats.n_trials)
            low, high = _util.binomial_interval(errors, stats.n_trials)
            _log.info('alpha = %s, m = %d: joint SER %g, GDoF %.4f',
                      alpha, m, stats.joint_error, estimate)
            rows.append(SweepRow(alpha, m, stats.n_trials, stats.joint_error,
                                 (high - low) / 2, estimate, theorem, tin,
                                 nonsecure, stats.outage, seed))
    return rows


def sweep_csv(rows, file):
    """Write sweep rows (or any rows with `CSV_HEADER` fields) as CSV.

    Parameters
    ----------
    rows : iterable of SweepRow
        Table rows.
    file : file-like
        Text stream, opened with ``newline=''``.

    """
    writer = _csv.writer(file)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_format(value) for value in row])


def _format(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, (float, _Fraction)):
        return repr(float(value))
    return str(value)


def symbol_error_trials(c, alpha1, alpha2, h, g_max, sigma, m, n, seed=None):
    """Single-symbol Monte Carlo for `sgic.pam.lemma1_error_bound()`.

    A uniform symbol of *c* is received with amplitude
    :math:`\\sqrt{P^{\\alpha_1}} h`, plus interference
    :math:`\\sqrt{P^{\\alpha_2}} g` with :math:`g` uniform on
    :math:`[-g_\\text{max}, g_\\text{max}]`, plus Gaussian noise of
    standard deviation *sigma*.

    Returns
    -------
    SymbolErrorStats

    """
    if n < 1:
        raise ValueError('n must be at least 1')
    if seed is None:
        seed = _default.seed
    rng = _util.rng_stream(seed, 3)
    amplitude = _util.pow2(m * _util.as_rational(alpha1)) * h
    interference = _util.pow2(m * _util.as_rational(alpha2))
    a = rng.integers(-c.Q, c.Q, size=n, endpoint=True)
    g = rng.uniform(-g_max, g_max, size=n)
    z = rng.standard_normal(n)
    y = amplitude * float(c.xi) * a + interference * g + sigma * z
    errors = int(_np.count_nonzero(_pam.slicer(c, y / amplitude) != a))
    low, high = _util.binomial_interval(errors, n)
    bound = _pam.lemma1_error_bound(c, alpha1, alpha2, h, g_max, sigma, m)
    return SymbolErrorStats(errors, n, errors / n, low, high, bound)
