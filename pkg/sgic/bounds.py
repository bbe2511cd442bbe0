"""Secure GDoF and secure capacity bounds.

All capacity bounds are in bits per channel use (logarithms are base 2).
They are evaluated in the log domain, so arbitrarily large *m* can be
used.  GDoF values are exact `fractions.Fraction` objects.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
from fractions import Fraction as _Fraction
import math as _math

import numpy as _np

from . import channel as _channel
from . import default as _default
from . import util as _util

_pos = _util.positive_part


class ConditionError(ValueError):
    """The channel does not satisfy the TIN-optimality conditions."""


def _alphas(arg):
    """Strength exponents of a `ChannelConfig` or a 2x2 matrix."""
    alpha = getattr(arg, 'alpha', arg)
    alpha = _util.as_rational_matrix(alpha)
    if any(a < 0 for row in alpha for a in row):
        raise ValueError('strength exponents must be non-negative')
    return alpha


def _as_exponent(alpha):
    alpha = _util.as_rational(alpha)
    if alpha < 0:
        raise ValueError('alpha must be non-negative')
    return alpha


def theorem1_gdof(alpha):
    """Optimal secure sum GDoF of the symmetric channel.

    Parameters
    ----------
    alpha : rational
        Cross-link strength exponent :math:`\\alpha \\geq 0`.

    Returns
    -------
    `fractions.Fraction`

    Examples
    --------
    >>> import sgic
    >>> sgic.bounds.theorem1_gdof(1)
    Fraction(2, 3)

    """
    a = _as_exponent(alpha)
    if a <= _Fraction(2, 3):
        return 2 * (1 - a)
    if a <= _Fraction(3, 4):
        return 2 * (2 * a - 1)
    if a <= 1:
        return 2 * (1 - 2 * a / 3)
    if a <= _Fraction(3, 2):
        return 2 * a / 3
    if a <= 2:
        return 2 * (2 - a)
    return _Fraction(0)


def nonsecure_gdof(alpha):
    """Sum GDoF of the symmetric channel without secrecy constraints.

    This is the classical "W" curve, which saturates at 2 for
    :math:`\\alpha \\geq 2`.

    """
    a = _as_exponent(alpha)
    return 2 * min(1, max(1 - a, a), max(1 - a / 2, a / 2))


def corollary_gdof_upper(alphas):
    """Three upper bounds on the secure sum GDoF.

    Parameters
    ----------
    alphas : ChannelConfig or 2x2 array_like of rationals
        Strength exponents :math:`\\alpha_{kl}`.

    Returns
    -------
    (b1, b2, b3) : triple of `fractions.Fraction`
        The secure sum GDoF is at most ``min(b1, b2, b3)``.

    Notes
    -----
    *b3* counts both positive parts in the term of each user.
    For the symmetric channel the minimum reduces to
    `symmetric_corollary_gdof()`.

    """
    (a11, a12), (a21, a22) = _alphas(alphas)
    b1 = _pos(a11 - _pos(a21 - a22)) + _pos(a22 - _pos(a12 - a11))
    b2 = (max(a21 - _pos(a11 - a12), a22 - a12, 0)
          + max(a12 - _pos(a22 - a21), a11 - a21, 0))
    b3 = (max(a11, a12) + _pos(a11 - a21) + _pos(a22 - a12)
          + max(a22, a21) + _pos(a11 - a21) + _pos(a22 - a12)) / 3
    return _Fraction(b1), _Fraction(b2), _Fraction(b3)


def symmetric_corollary_gdof(alpha):
    """Simplified minimum of `corollary_gdof_upper()` for symmetric
    channels."""
    a = _as_exponent(alpha)
    return 2 * min(max(a - _pos(1 - a), 1 - a),
                   _pos(1 - _pos(a - 1)),
                   (max(1, a) + 2 * _pos(1 - a)) / _Fraction(3))


def gwc_tin_gdof(alphas):
    """Secure sum GDoF of Gaussian wiretap coding with treating
    interference as noise (GWC-TIN)."""
    (a11, a12), (a21, a22) = _alphas(alphas)
    return _Fraction(_pos(a11 - a21) + _pos(a22 - a12))


def tin_optimality_check(alphas):
    """Check whether GWC-TIN is within a constant gap of optimal.

    Returns ``True`` iff both
    :math:`\\alpha_{22} + (\\alpha_{11} - \\alpha_{12})^+ \\geq
    \\alpha_{21} + \\alpha_{12}` and
    :math:`\\alpha_{11} + (\\alpha_{22} - \\alpha_{21})^+ \\geq
    \\alpha_{21} + \\alpha_{12}` hold.

    """
    (a11, a12), (a21, a22) = _alphas(alphas)
    cross = a21 + a12
    return a22 + _pos(a11 - a12) >= cross and a11 + _pos(a22 - a21) >= cross


def _log2_term(cfg, exponent, *factors):
    """log2 of P**exponent * product(factors**2), for log2_1p_sum()."""
    return (2 * cfg.m * _np.asarray(exponent, dtype=float)
            + sum(2 * _math.log2(f) for f in factors))


def _half_log(*terms):
    return _util.log2_1p_sum(*terms) / 2


def gwc_tin_rates(cfg, beta1, beta2):
    """Secure rates of GWC-TIN with cooperative-jamming-free power control.

    Parameters
    ----------
    cfg : ChannelConfig
        Channel configuration.
    beta1, beta2 : rational or array_like
        Power reduction exponents, transmitter :math:`k` uses
        power :math:`P^{-\\beta_k}`.  Arrays are broadcast.

    Returns
    -------
    (R1, R2) : pair of float or `numpy.ndarray`
        Secure rates in bits per channel use.  They can be negative,
        see `tin_lower_bound()` for the clamped values.

    """
    (a11, a12), (a21, a22) = cfg.alpha
    (h11, h12), (h21, h22) = cfg.h
    b1 = _np.asarray(beta1, dtype=float)
    b2 = _np.asarray(beta2, dtype=float)
    if _np.any(b1 < 0) or _np.any(b2 < 0):
        raise ValueError('beta must be non-negative')
    a11, a12, a21, a22 = (float(a) for a in (a11, a12, a21, a22))
    # log2(1 + a / (1 + b)) = log2(1 + a + b) - log2(1 + b)
    desired1 = _log2_term(cfg, a11 - b1, h11)
    jam1 = _log2_term(cfg, a12 - b2, h12)
    leak1 = _log2_term(cfg, a21 - b1, h21)
    desired2 = _log2_term(cfg, a22 - b2, h22)
    jam2 = _log2_term(cfg, a21 - b1, h21)
    leak2 = _log2_term(cfg, a12 - b2, h12)
    R1 = (_half_log(desired1, jam1) - _half_log(jam1)) - _half_log(leak1)
    R2 = (_half_log(desired2, jam2) - _half_log(jam2)) - _half_log(leak2)
    return R1, R2


def simple_betas(alphas):
    """The power control :math:`\\beta_1 = \\alpha_{21}, \\beta_2 =
    \\alpha_{12}` used for the capacity lower bound."""
    (_, a12), (a21, _) = _alphas(alphas)
    return a21, a12


def tin_lower_bound(cfg):
    """Clamped GWC-TIN rates ``(R1, R2)`` with `simple_betas()`."""
    R1, R2 = gwc_tin_rates(cfg, *simple_betas(cfg))
    return max(float(R1), 0.0), max(float(R2), 0.0)


def optimize_tin_betas(cfg, *, step=None):
    """Grid search for the power control maximizing the GWC-TIN sum rate.

    Parameters
    ----------
    cfg : ChannelConfig
        Channel configuration.
    step : rational, optional
        Grid step for both :math:`\\beta_k \\in [0, \\max \\alpha_{kl}]`,
        see `sgic.default.beta_grid_step`.

    Returns
    -------
    (beta1, beta2, R1, R2)
        Best exponents (as `fractions.Fraction`) and their clamped
        rates.  Ties keep the smallest exponents.

    """
    if step is None:
        step = _default.beta_grid_step
    top = max(a for row in cfg.alpha for a in row)
    grid = _util.rational_grid(0, top, step, endpoint=False)
    if not grid or grid[-1] != top:
        grid.append(top)
    b1, b2 = _np.meshgrid(_np.array(grid, dtype=float),
                          _np.array(grid, dtype=float), indexing='ij')
    R1, R2 = gwc_tin_rates(cfg, b1, b2)
    R1 = _np.maximum(R1, 0)
    R2 = _np.maximum(R2, 0)
    i, j = _np.unravel_index(_np.argmax(R1 + R2), R1.shape)
    return grid[i], grid[j], float(R1[i, j]), float(R2[i, j])


class BoundReport(_namedtuple('BoundReport', [
        'sum_upper_bits', 'sum_lower_bits', 'per_user_upper',
        'weighted_bounds', 'gap_bits', 'tin_optimal', 'sum_bound_bits'])):
    """Named tuple returned by `capacity_upper()`.

    See `collections.namedtuple`.

    Attributes
    ----------
    sum_upper_bits : float
        Smallest applicable upper bound on the secure sum capacity.
    sum_lower_bits : float
        Secure sum rate achieved by GWC-TIN with `simple_betas()`.
    per_user_upper : (float, float)
        Upper bounds on :math:`R_1` and :math:`R_2`.
    weighted_bounds : (float, float)
        Upper bounds on :math:`2R_1 + R_2` and :math:`2R_2 + R_1`.
    gap_bits : float
        ``sum_upper_bits - sum_lower_bits``.
    tin_optimal : bool
        Result of `tin_optimality_check()`.
    sum_bound_bits : float
        The direct sum-rate bound alone.

    """

    __slots__ = ()

    def as_json(self):
        """Return a JSON-compatible `dict`."""
        data = self._asdict()
        data['per_user_upper'] = list(self.per_user_upper)
        data['weighted_bounds'] = list(self.weighted_bounds)
        return data


def capacity_upper(cfg):
    """Evaluate the outer bounds on the secure capacity region.

    The sum capacity bound is the smallest of the direct sum-rate bound,
    one third of the sum of both weighted bounds and the sum of both
    per-user bounds.

    Parameters
    ----------
    cfg : ChannelConfig
        Channel configuration.

    Returns
    -------
    BoundReport

    """
    (a11, a12), (a21, a22) = cfg.alpha
    (h11, h12), (h21, h22) = cfg.h
    t = _log2_term

    sum_bound = (
        _half_log(t(cfg, a22 - a12, h22 / h12),
                  t(cfg, a21 - _pos(a11 - a12), h21 / h11))
        + _half_log(t(cfg, a11 - a21, h11 / h21),
                    t(cfg, a12 - _pos(a22 - a21), h12 / h22))
        + _math.log2(10))
    # both weighted bounds divide by |h21|^2 in the term with (a11 - a21)+
    weighted1 = (_half_log(t(cfg, _pos(a11 - a21), 1 / h21))
                 + _half_log(t(cfg, _pos(a22 - a12), 1 / h12))
                 + _half_log(t(cfg, a11, h11), t(cfg, a12, h12))
                 + _math.log2(9))
    weighted2 = (_half_log(t(cfg, _pos(a22 - a12), 1 / h12))
                 + _half_log(t(cfg, _pos(a11 - a21), 1 / h21))
                 + _half_log(t(cfg, a22, h22), t(cfg, a21, h21))
                 + _math.log2(9))
    user1 = min(_half_log(t(cfg, a11 - a21, h11 / h21),
                          t(cfg, a22 + a11 - a21, h11 * h22 / h21)),
                _half_log(t(cfg, a11, h11)))
    user2 = min(_half_log(t(cfg, a22 - a12, h22 / h12),
                          t(cfg, a11 + a22 - a12, h22 * h11 / h12)),
                _half_log(t(cfg, a22, h22)))

    upper = min(sum_bound, (weighted1 + weighted2) / 3, user1 + user2)
    lower = sum(tin_lower_bound(cfg))
    return BoundReport(
        sum_upper_bits=float(upper),
        sum_lower_bits=float(lower),
        per_user_upper=(float(user1), float(user2)),
        weighted_bounds=(float(weighted1), float(weighted2)),
        gap_bits=float(upper - lower),
        tin_optimal=tin_optimality_check(cfg),
        sum_bound_bits=float(sum_bound),
    )


def gap(cfg):
    """Gap in bits between the secure sum capacity bounds.

    Raises
    ------
    ConditionError
        If *cfg* does not satisfy `tin_optimality_check()`; no constant
        gap is claimed outside these conditions.

    """
    if not tin_optimality_check(cfg):
        raise ConditionError(
            'channel does not satisfy the TIN-optimality conditions')
    return capacity_upper(cfg).gap_bits


def gap_chain_bound(cfg):
    """Closed-form upper bound on `gap()` which depends only on *P*.

    .. math::

        \\frac12 \\log \\frac{1 + 8X}{1 + X/5}
        + \\frac12 \\log \\frac{1 + 8Y}{1 + Y/5} + \\log 50

    with :math:`X = P^{\\alpha_{22} - \\alpha_{12}}` and
    :math:`Y = P^{\\alpha_{11} - \\alpha_{21}}`.  It never exceeds
    :math:`\\log 40 + \\log 50`.

    """
    (a11, a12), (a21, a22) = cfg.alpha
    total = _math.log2(50)
    for exponent in a22 - a12, a11 - a21:
        x = _log2_term(cfg, exponent)
        total += (_half_log(x + 3) - _half_log(x - _math.log2(5)))
    return float(total)


BoundRow = _namedtuple(
    'BoundRow', 'alpha d_secure d_nonsecure d_tin b1 b2 b3 gap')


def bound_table(alphas, *, m=None, h=None):
    """GDoF bounds of symmetric channels for a list of exponents.

    Parameters
    ----------
    alphas : sequence of rationals
        Cross-link exponents.
    m : int, optional
        If given together with *h*, the ``gap`` column holds `gap()` of
        the corresponding channel (NaN where it is not claimed).
    h : 2x2 array_like, optional
        Channel phases for the ``gap`` column.

    Returns
    -------
    list of BoundRow

    """
    rows = []
    for alpha in alphas:
        alpha = _as_exponent(alpha)
        alphas_kl = [[1, alpha], [alpha, 1]]
        b1, b2, b3 = corollary_gdof_upper(alphas_kl)
        value = _math.nan
        if m is not None and h is not None:
            cfg = _channel.SymmetricChannel(m, alpha, h).expand()
            if tin_optimality_check(cfg):
                value = gap(cfg)
        rows.append(BoundRow(alpha, theorem1_gdof(alpha),
                             nonsecure_gdof(alpha), gwc_tin_gdof(alphas_kl),
                             b1, b2, b3, value))
    return rows
