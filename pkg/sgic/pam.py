"""PAM constellations.

A PAM constellation with step :math:`\\xi` and half-count :math:`Q` is
the point set

.. math::

    \\Omega(\\xi, Q) = \\{\\xi a : a \\in \\mathbb{Z} \\cap [-Q, Q]\\}.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
import math as _math
import numbers as _numbers

import numpy as _np
from scipy import special as _special

from . import util as _util


class PamConstellation(_namedtuple('PamConstellation', 'xi Q')):
    """Named tuple holding the step *xi* and the half-count *Q*.

    See `collections.namedtuple`.

    """

    __slots__ = ()

    def __new__(cls, xi, Q):
        if (isinstance(Q, bool) or not isinstance(Q, _numbers.Integral)
                or Q < 1):
            raise ValueError('Q must be a positive integer')
        if not xi > 0:
            raise ValueError('xi must be positive')
        return super().__new__(cls, xi, int(Q))


def indices(c):
    """Integer indices :math:`-Q, \\dots, Q` of the constellation points."""
    return _np.arange(-c.Q, c.Q + 1)


def points(c):
    """Constellation points in ascending order.

    Examples
    --------
    >>> import sgic
    >>> sgic.pam.points(sgic.pam.PamConstellation(1, 2))
    array([-2., -1.,  0.,  1.,  2.])

    """
    return indices(c) * float(c.xi)


def average_power(c):
    """Average power :math:`\\xi^2 Q (Q + 1) / 3` of a uniform draw.

    The result is an exact `fractions.Fraction` if *xi* is rational.

    """
    return c.xi**2 * c.Q * (c.Q + 1) / 3


def min_distance(c):
    """Minimum distance between two constellation points (i.e. *xi*)."""
    return c.xi


def slicer(c, observed):
    """Nearest-point demodulation.

    Parameters
    ----------
    c : PamConstellation
        Constellation.
    observed : float or array_like
        Observation(s) on the constellation's scale.

    Returns
    -------
    int or `numpy.ndarray`
        Index (or array of indices) in :math:`[-Q, Q]` of the closest
        point.  Midpoints go to the smaller index, observations outside
        the constellation are clamped.

    """
    a = _np.ceil(_np.asarray(observed, dtype=float) / float(c.xi) - 0.5)
    a = _np.clip(a, -c.Q, c.Q).astype(_np.int64)
    return int(a) if a.ndim == 0 else a


def q_function(a):
    r"""Tail probability of the standard normal distribution.

    .. math::

        Q(a) = \frac{1}{\sqrt{2\pi}} \int_a^\infty e^{-s^2/2} \,ds
             = \frac12 \operatorname{erfc}\left(\frac{a}{\sqrt2}\right)

    """
    return _special.erfc(_np.asarray(a, dtype=float) / _math.sqrt(2)) / 2


def lemma1_params(alpha_bar, h, gamma, g_max, m):
    """Constellation for the single-symbol error bound.

    :math:`Q = \\lfloor P^{\\bar\\alpha/2} h \\gamma / (2 g_\\text{max})
    \\rfloor` and :math:`\\xi = \\gamma / Q`.

    Parameters
    ----------
    alpha_bar : rational
        Positive constellation exponent :math:`\\bar\\alpha`.
    h : float
        Phase of the desired link.
    gamma : float
        Amplitude constant in :math:`(0, 1/\\sqrt2]`.
    g_max : float
        Magnitude bound of the interference.
    m : int
        Power exponent, :math:`P = 2^{2m}`.

    Returns
    -------
    PamConstellation

    Examples
    --------
    >>> import sgic
    >>> sgic.pam.lemma1_params('0.4', 2, 0.5, 1, 10)
    PamConstellation(xi=0.0625, Q=8)

    """
    alpha_bar = _util.as_rational(alpha_bar)
    if alpha_bar <= 0:
        raise ValueError('alpha_bar must be positive')
    if not 0 < gamma <= 1 / _math.sqrt(2):
        raise ValueError('gamma must lie in (0, 1/sqrt(2)]')
    if not g_max > 0:
        raise ValueError('g_max must be positive')
    Q = _math.floor(_util.pow2(m * alpha_bar) * h * gamma / (2 * g_max))
    if Q < 1:
        raise ValueError(
            'P too small for the constellation design (Q < 1), increase m')
    return PamConstellation(gamma / Q, Q)


def lemma1_error_bound(c, alpha1, alpha2, h, g_max, sigma, m):
    """Bound on the single-symbol decoding error probability.

    The desired symbol is received with amplitude
    :math:`\\sqrt{P^{\\alpha_1}} h`, the interference is bounded by
    :math:`\\sqrt{P^{\\alpha_2}} g_\\text{max}` and the noise has standard
    deviation *sigma*.

    Returns
    -------
    float
        :math:`2 Q((d_\\text{min}/2 - \\sqrt{P^{\\alpha_2}} g_\\text{max})
        / \\sigma)`, or exactly 1 if the interference can reach the
        decision boundary.

    """
    half_distance = _util.pow2(m * _util.as_rational(alpha1)) * h * c.xi / 2
    interference = _util.pow2(m * _util.as_rational(alpha2)) * g_max
    if half_distance < interference:
        return 1.0
    return float(2 * q_function((half_distance - interference) / sigma))
