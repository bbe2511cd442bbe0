"""Receivers of the cooperative jamming schemes.

Regimes A and D are decoded successively, one power level at a time,
with the PAM slicer.  Regimes B and C decode the superposition

.. math::

    x_s = g_0 q_0 + A_1 g_1 q_1 + A_2 g_2 q_2

of three integer-indexed streams jointly, by a nearest-point search
over all lattice points in the box :math:`|q_0|, |q_2| \\leq Q_\\text{max}`,
:math:`|q_1| \\leq 2 Q_\\text{max}`.  Returning the integer triple
itself separates the streams.

Every decoder accepts scalar or array observations.  Each stage comes
with a reliability flag, which is ``True`` if the residual of that stage
stays within the known interference bound plus
`sgic.default.noise_allowance` noise standard deviations.  Once a stage
is unreliable, all later stages are unreliable, too.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
import functools as _functools
import logging as _logging
import math as _math
import numbers as _numbers

import numpy as _np

from . import channel as _channel
from . import default as _default
from . import pam as _pam
from . import scheme as _scheme
from . import util as _util

_log = _logging.getLogger(__name__)

_SQRT2 = _math.sqrt(2)

OUTAGE_CONSTANT = 258048
"""Constant of the bound on the Lebesgue measure of the outage set."""


class BudgetExceededError(ValueError):
    """An exhaustive search would exceed `sgic.default.enumeration_budget`."""


def _check_budget(count, what):
    budget = _default.enumeration_budget
    if count > budget:
        raise BudgetExceededError(
            '{} needs {} candidates, which exceeds the enumeration budget '
            'of {}; use a smaller m or a larger epsilon'.format(
                what, count, budget))


class LatticeSearchSpace(_namedtuple('LatticeSearchSpace',
                                     'Qmax A1 A2 g0 g1 g2')):
    """Named tuple describing the lattice of a joint decoder.

    See `collections.namedtuple`.

    Attributes
    ----------
    Qmax : int
        Half-count of the outer coordinates :math:`q_0, q_2`; the middle
        coordinate :math:`q_1` ranges over twice as many values.
    A1, A2 : int
        Exact integer scale factors.
    g0, g1, g2 : float
        Channel phase products.

    """

    __slots__ = ()

    def __new__(cls, Qmax, A1, A2, g0, g1, g2):
        for name, value in ('Qmax', Qmax), ('A1', A1), ('A2', A2):
            if (isinstance(value, bool)
                    or not isinstance(value, _numbers.Integral) or value < 1):
                raise ValueError(name + ' must be a positive integer')
        g0, g1, g2 = float(g0), float(g1), float(g2)
        if g0 == 0:
            raise ValueError('g0 must be non-zero')
        return super().__new__(cls, int(Qmax), int(A1), int(A2), g0, g1, g2)

    @property
    def ranges(self):
        """Inclusive index bounds of :math:`(q_0, q_1, q_2)`."""
        Q = self.Qmax
        return (-Q, Q), (-2 * Q, 2 * Q), (-Q, Q)

    @property
    def size(self):
        """Number of lattice points in the search box."""
        Q = self.Qmax
        return (2 * Q + 1) * (4 * Q + 1) * (2 * Q + 1)

    def value(self, q0, q1, q2):
        """Unscaled lattice point :math:`x_s` of an index triple."""
        return (self.g0 * _np.asarray(q0) + self.A1 * self.g1 * _np.asarray(q1)
                + self.A2 * self.g2 * _np.asarray(q2))


class Reliability(_namedtuple('Reliability', 'v_c v_p aligned jam')):
    """Per-stream reliability flags (``None`` for absent streams)."""

    __slots__ = ()


class DecodeResult(_namedtuple('DecodeResult',
                               'v_c v_p aligned jam reliable')):
    """Named tuple returned by the decoders.

    See `collections.namedtuple`.

    Attributes
    ----------
    v_c, v_p : int or array of int
        Estimated indices of the desired common and private symbols
        (``v_p`` is ``None`` without private symbols).
    aligned : int or array of int
        Estimated index of the other user's common symbol plus the own
        jamming symbol, in :math:`[-2Q, 2Q]`.
    jam : int or array of int
        Estimated index of the other user's jamming symbol.
    reliable : Reliability
        Reliability flags of each stream.

    """

    __slots__ = ()


def _stage(residual, amplitude, c, bound, reliable):
    """One slicer stage of successive cancellation."""
    index = _pam.slicer(c, residual / amplitude)
    residual = residual - amplitude * float(c.xi) * _np.asarray(index)
    reliable = _np.logical_and(
        reliable, _np.abs(residual) <= bound + _default.noise_allowance)
    return index, residual, reliable


def _as_flag(flag):
    return bool(flag) if _np.ndim(flag) == 0 else flag


def _phase_products(h):
    """g0 = h12 h21, g1 = h12 h11, g2 = h11 h22 of the receiver at hand."""
    (h11, h12), (h21, h22) = _channel.as_phases(h)
    return h12 * h21, h12 * h11, h11 * h22


def successive_decode_A(y1, sc, phases, m):
    """Successive decoding at receiver 1 for regime A.

    Decoded in order: the desired common symbol, the aligned sum of the
    other user's common symbol and the own jamming symbol, the other
    user's jamming symbol and finally the desired private symbol.

    Parameters
    ----------
    y1 : float or array_like
        Received signal(s) at receiver 1.
    sc : SchemeConfig
        Scheme configuration of regime A.
    phases : 2x2 array_like
        Channel phases.
    m : int
        Power exponent.

    Returns
    -------
    DecodeResult

    """
    if sc.regime != 'A':
        raise ValueError('successive_decode_A() needs a regime A scheme')
    cs = _scheme.constellations(sc, m)
    g0, g1, g2 = _phase_products(phases)
    a = sc.alpha
    s_1 = _util.pow2(m)
    s_a = _util.pow2(m * a)
    s_2a1 = _util.pow2(m * (2 * a - 1))
    s_1a = _util.pow2(m * (1 - a))
    aligned_c = _pam.PamConstellation(cs.v_c.xi, 2 * cs.v_c.Q)

    r = _np.asarray(y1, dtype=float)
    v_c, r, ok_vc = _stage(r, s_1 * g2, cs.v_c, s_a * 5 * _SQRT2, True)
    aligned, r, ok_al = _stage(r, s_a * g1, aligned_c,
                               s_2a1 * 3 * _SQRT2, ok_vc)
    jam, r, ok_jam = _stage(r, s_2a1 * g0, cs.u,
                            (s_1a + 1) / _SQRT2, ok_al)
    v_p, r, ok_vp = _stage(r, s_1a * g2, cs.v_p, 1 / _SQRT2, ok_jam)
    return DecodeResult(v_c, v_p, aligned, jam, Reliability(
        _as_flag(ok_vc), _as_flag(ok_vp), _as_flag(ok_al), _as_flag(ok_jam)))


def successive_decode_D(y1, sc, phases, m):
    """Successive decoding at receiver 1 for regime D.

    Decoded in order: the other user's jamming symbol, the aligned sum
    and finally the desired common symbol.  See `successive_decode_A()`.

    """
    if sc.regime != 'D':
        raise ValueError('successive_decode_D() needs a regime D scheme')
    cs = _scheme.constellations(sc, m)
    g0, g1, g2 = _phase_products(phases)
    a = sc.alpha
    s_1 = _util.pow2(m)
    s_a = _util.pow2(m * a)
    s_2a = _util.pow2(m * (2 - a))
    aligned_c = _pam.PamConstellation(cs.v_c.xi, 2 * cs.v_c.Q)

    r = _np.asarray(y1, dtype=float)
    jam, r, ok_jam = _stage(r, s_a * g0, cs.u, s_1 * 3 * _SQRT2, True)
    aligned, r, ok_al = _stage(r, s_1 * g1, aligned_c,
                               s_2a * _SQRT2, ok_jam)
    v_c, r, ok_vc = _stage(r, s_2a * g2, cs.v_c, 0, ok_al)
    return DecodeResult(v_c, None, aligned, jam, Reliability(
        _as_flag(ok_vc), None, _as_flag(ok_al), _as_flag(ok_jam)))


def lattice_space(sc, phases, m, *, user=1):
    """Lattice of the joint decoder of regime B or C.

    Parameters
    ----------
    sc : SchemeConfig
        Scheme configuration of regime B or C.
    phases : 2x2 array_like
        Channel phases.
    m : int
        Power exponent, see `sgic.scheme.check_integrality()`.
    user : {1, 2}, optional
        Receiver; user 2 sees the phases with both users exchanged.

    Returns
    -------
    LatticeSearchSpace

    """
    integral = _scheme.check_integrality(sc, m)
    if integral is None:
        raise ValueError('lattice decoding needs a regime B or C scheme')
    A1, A2 = integral
    Qmax = _scheme.constellations(sc, m).v_c.Q
    if A2 * 4 * Qmax >= 2**52:
        raise ValueError(
            'lattice points exceed double precision (A2*4*Qmax >= 2**52), '
            'use a smaller m')
    if user == 2:
        phases = _channel.swap_users(phases)
    elif user != 1:
        raise ValueError('user index must be 1 or 2')
    g0, g1, g2 = _phase_products(phases)
    if sc.regime == 'C':
        # the desired common symbol has the lowest power level in regime C
        g0, g2 = g2, g0
    return LatticeSearchSpace(Qmax, A1, A2, g0, g1, g2)


def lattice_scale(sc, m):
    """Received amplitude of the unscaled lattice points.

    :math:`\\sqrt{P^{2\\alpha-1}} \\cdot 2\\gamma/Q` in regime B,
    :math:`\\sqrt{P^{2-\\alpha}} \\cdot 2\\gamma/Q` in regime C.

    """
    if sc.regime == 'B':
        exponent = 2 * sc.alpha - 1
    elif sc.regime == 'C':
        exponent = 2 - sc.alpha
    else:
        raise ValueError('lattice decoding needs a regime B or C scheme')
    return _util.pow2(m * exponent) * float(
        _scheme.constellations(sc, m).v_c.xi)


_CHUNK = 2**20


@_functools.lru_cache(maxsize=2)
def _codebook(space):
    """Points :math:`g_0 q_0 + A_1 g_1 q_1` in ascending order, with their
    indices."""
    _check_budget(space.size, 'joint lattice decoding')
    (lo0, hi0), (lo1, hi1), _ = space.ranges
    q0, q1 = _np.meshgrid(_np.arange(lo0, hi0 + 1), _np.arange(lo1, hi1 + 1),
                          indexing='ij')
    q0, q1 = q0.ravel(), q1.ravel()
    values = space.g0 * q0 + space.A1 * space.g1 * q1
    order = _np.argsort(values, kind='stable')
    _log.debug('built codebook of %d points for %d slices', len(order),
               2 * space.Qmax + 1)
    return values[order], q0[order], q1[order]


def _nearest(t, space, values, q0, q1):
    """Nearest lattice point of each entry of the 1-D array *t*."""
    lo2, hi2 = space.ranges[2]
    q2 = _np.arange(lo2, hi2 + 1)
    offsets = space.A2 * space.g2 * q2
    rest = t[:, _np.newaxis] - offsets
    upper = _np.clip(_np.searchsorted(values, rest), 1, len(values) - 1)
    lower = upper - 1
    pick = _np.where(rest - values[lower] <= values[upper] - rest,
                     lower, upper)
    distance = _np.abs(rest - values[pick])
    point = _np.where(distance == distance.min(axis=1, keepdims=True),
                      values[pick] + offsets, _np.inf)
    best = _np.argmin(point, axis=1)
    pick = pick[_np.arange(len(t)), best]
    return q0[pick], q1[pick], q2[best]


def joint_lattice_decode(y, space, scale):
    """Nearest lattice point of an observation.

    For each value of :math:`q_2` the nearest point of the remaining
    two-dimensional slice is found by bisection, so memory grows with
    :math:`Q_\\text{max}^2` instead of the number of lattice points.

    Parameters
    ----------
    y : float or array_like
        Observation(s).
    space : LatticeSearchSpace
        Search box.
    scale : float
        Received amplitude of the unscaled lattice points, see
        `lattice_scale()`.

    Returns
    -------
    (q0, q1, q2)
        The index triple minimizing
        :math:`|y - \\text{scale} \\cdot x_s(q_0, q_1, q_2)|` over the
        whole box.  Ties go to the smaller lattice point.

    Raises
    ------
    BudgetExceededError
        If the box holds more points than
        `sgic.default.enumeration_budget`.

    Examples
    --------
    >>> import sgic
    >>> space = sgic.decoder.LatticeSearchSpace(1, 1, 1, 1, 10, 100)
    >>> sgic.decoder.joint_lattice_decode(10.2, space, 1)
    (0, 1, 0)

    """
    values, q0, q1 = _codebook(space)
    t = _np.asarray(y, dtype=float) / scale
    flat = t.ravel()
    rows = max(1, _CHUNK // (2 * space.Qmax + 1))
    parts = [_nearest(flat[i:i + rows], space, values, q0, q1)
             for i in range(0, len(flat), rows)]
    if not parts:
        empty = _np.zeros(t.shape, dtype=q0.dtype)
        return empty, empty.copy(), empty.copy()
    triple = [_np.concatenate(p).reshape(t.shape) for p in zip(*parts)]
    if t.ndim == 0:
        return tuple(int(q) for q in triple)
    return tuple(triple)


def residual_private_decode(y, triple, sc, phases, m):
    """Decode the desired private symbol in regime B.

    The lattice point given by *triple* is removed from *y*, the
    residual is sliced against the private constellation.

    Returns
    -------
    (index, reliable)
        Estimated private index and its reliability flag.

    """
    if sc.regime != 'B':
        raise ValueError('private symbols are only decoded in regime B')
    space = lattice_space(sc, phases, m)
    residual = (_np.asarray(y, dtype=float)
                - lattice_scale(sc, m) * space.value(*triple))
    amplitude = _util.pow2(m * (1 - sc.alpha)) * space.g2
    cs = _scheme.constellations(sc, m)
    index, _, reliable = _stage(residual, amplitude, cs.v_p, 1 / _SQRT2, True)
    return index, _as_flag(reliable)


def lattice_decode(y1, sc, phases, m):
    """Joint decoding at receiver 1 for regimes B and C.

    In regime B the lattice coordinates are the other user's jamming
    symbol, the aligned sum and the desired common symbol (in order of
    increasing power); the desired private symbol is decoded from the
    residual.  In regime C the desired common symbol comes first and the
    jamming symbol last.

    Returns
    -------
    DecodeResult

    """
    space = lattice_space(sc, phases, m)
    scale = lattice_scale(sc, m)
    y1 = _np.asarray(y1, dtype=float)
    triple = joint_lattice_decode(y1, space, scale)
    residual = _np.abs(y1 - scale * space.value(*triple))
    if sc.regime == 'B':
        bound = _util.pow2(m * (1 - sc.alpha)) * _SQRT2
        ok = _as_flag(residual <= bound + _default.noise_allowance)
        v_p, ok_vp = residual_private_decode(y1, triple, sc, phases, m)
        jam, aligned, v_c = triple
        return DecodeResult(v_c, v_p, aligned, jam, Reliability(
            ok, _as_flag(_np.logical_and(ok, ok_vp)), ok, ok))
    ok = _as_flag(residual <= _default.noise_allowance)
    v_c, aligned, jam = triple
    return DecodeResult(v_c, None, aligned, jam, Reliability(ok, None, ok, ok))


def decode(user, y, sc, phases, m):
    """Decode the received signal of *user* with the decoder of its regime.

    Receiver 2 uses the same decoders with both users exchanged.

    Returns
    -------
    DecodeResult

    """
    if user == 2:
        phases = _channel.swap_users(phases)
    elif user != 1:
        raise ValueError('user index must be 1 or 2')
    if sc.regime == 'A':
        return successive_decode_A(y, sc, phases, m)
    if sc.regime == 'D':
        return successive_decode_D(y, sc, phases, m)
    return lattice_decode(y, sc, phases, m)


def min_distance(space, *, symmetric=True):
    """Minimum distance between distinct points of the lattice.

    .. math::

        d_\\text{min} = \\min_{\\Delta \\neq 0}
        |g_0 \\Delta_0 + A_1 g_1 \\Delta_1 + A_2 g_2 \\Delta_2|

    over all differences of two triples in the search box.  The pairs
    :math:`(\\Delta_1, \\Delta_2)` are enumerated, :math:`\\Delta_0` is
    minimized in closed form (nearest integer, clipped to its range).

    Parameters
    ----------
    space : LatticeSearchSpace
        Search box.
    symmetric : bool, optional
        If ``True`` (the default), only one of :math:`\\pm\\Delta` is
        enumerated.

    Raises
    ------
    BudgetExceededError
        If more pairs than `sgic.default.enumeration_budget` would be
        enumerated.

    Examples
    --------
    >>> import sgic
    >>> space = sgic.decoder.LatticeSearchSpace(1, 1, 1, 1, 10, 100)
    >>> sgic.decoder.min_distance(space)
    1.0

    """
    Q = space.Qmax
    d1 = _np.arange(-4 * Q, 4 * Q + 1)
    if symmetric:
        d2 = _np.arange(1, 2 * Q + 1)
        count = len(d1) * len(d2) + 4 * Q
    else:
        d2 = _np.arange(-2 * Q, 2 * Q + 1)
        count = len(d1) * len(d2) - 1
    _check_budget(count, 'minimum distance search')
    d1, d2 = _np.meshgrid(d1, d2, indexing='ij')
    d1, d2 = d1.ravel(), d2.ravel()
    if symmetric:
        d1 = _np.concatenate([d1, _np.arange(1, 4 * Q + 1)])
        d2 = _np.concatenate([d2, _np.zeros(4 * Q, dtype=d2.dtype)])
    else:
        nonzero = (d1 != 0) | (d2 != 0)
        d1, d2 = d1[nonzero], d2[nonzero]
    c = space.A1 * space.g1 * d1 + space.A2 * space.g2 * d2
    d0 = _np.clip(_np.rint(-c / space.g0), -2 * Q, 2 * Q)
    distance = _np.abs(space.g0 * d0 + c).min()
    return float(min(distance, abs(space.g0)))


def outage_threshold(alpha, delta, m):
    """Minimum distance below which a phase draw is in outage.

    :math:`\\delta P^{-(8\\alpha/3 - 2)/2}` in regime B,
    :math:`\\delta P^{-(2 - 4\\alpha/3)/2}` in regime C.

    """
    alpha = _util.as_rational(alpha)
    regime = _scheme.regime_of(alpha)
    if regime == 'B':
        exponent = 8 * alpha / 3 - 2
    elif regime == 'C':
        exponent = 2 - 4 * alpha / 3
    else:
        raise ValueError('outage is only defined in regimes B and C')
    return float(_util.as_rational(delta)) * _util.pow2(-m * exponent)


def outage_test(phases, alpha, delta, epsilon, m, *, gamma=None, user=1):
    """Check whether a phase draw is in the outage set of a receiver.

    Parameters
    ----------
    phases : 2x2 array_like
        Channel phases.
    alpha, delta, epsilon : rational
        Scheme and threshold parameters.
    m : int
        Power exponent.
    user : {1, 2}, optional
        Receiver whose lattice is checked, see `lattice_space()`.

    Returns
    -------
    bool
        ``True`` if `min_distance()` of the receiver's lattice is smaller
        than `outage_threshold()`.

    """
    sc = _scheme.build_config(alpha, epsilon=epsilon, gamma=gamma)
    space = lattice_space(sc, phases, m, user=user)
    return min_distance(space) < outage_threshold(alpha, delta, m)


def outage_measure_bound(delta, epsilon, m):
    """Analytic bound :math:`\\min(1, 258048 \\delta P^{-\\epsilon/2})`
    on the measure of the outage set."""
    value = (OUTAGE_CONSTANT * float(_util.as_rational(delta))
             * _util.pow2(-m * _util.as_rational(epsilon)))
    return min(1.0, value)


class OutageEstimate(_namedtuple('OutageEstimate', [
        'fraction', 'analytic_bound', 'ci_low', 'ci_high', 'outages',
        'n_samples'])):
    """Named tuple returned by `outage_measure_estimate()`.

    See `collections.namedtuple`.

    """

    __slots__ = ()


def outage_measure_estimate(alpha, delta, epsilon, m, n_samples, rng=None,
                            *, gamma=None):
    """Monte Carlo estimate of the measure of the outage set.

    Phases are drawn uniformly from :math:`(1, 2]^4`, which has
    measure 1, so the outage fraction estimates the measure itself.

    Parameters
    ----------
    alpha, delta, epsilon : rational
        Scheme and threshold parameters.
    m : int
        Power exponent.
    n_samples : int
        Number of phase draws (at least 1).
    rng : numpy.random.Generator, optional
        Random generator, by default the stream ``(default.seed, 2)``
        of `sgic.util.rng_stream()`.

    Returns
    -------
    OutageEstimate

    """
    if n_samples < 1:
        raise ValueError('n_samples must be at least 1')
    if rng is None:
        rng = _util.rng_stream(None, 2)
    sc = _scheme.build_config(alpha, epsilon=epsilon, gamma=gamma)
    threshold = outage_threshold(alpha, delta, m)
    outages = 0
    for _ in range(n_samples):
        space = lattice_space(sc, _channel.random_phases(rng), m)
        outages += min_distance(space) < threshold
    low, high = _util.binomial_interval(outages, n_samples)
    return OutageEstimate(outages / n_samples,
                          outage_measure_bound(delta, epsilon, m),
                          low, high, outages, n_samples)


def lattice_error_bound(alpha, gamma, delta, epsilon, m):
    """Bound on the probability of a wrong lattice point outside outage.

    :math:`2 Q(\\sqrt{P^{1-\\alpha}}(\\gamma \\delta \\sqrt{P^\\epsilon}
    - \\sqrt2))`, or 1 if the argument is negative.

    """
    margin = (gamma * float(_util.as_rational(delta))
              * _util.pow2(m * _util.as_rational(epsilon)) - _SQRT2)
    argument = _util.pow2(m * (1 - _util.as_rational(alpha))) * margin
    if argument < 0:
        return 1.0
    return float(2 * _pam.q_function(argument))
