"""Cooperative jamming schemes for the symmetric channel.

Each transmitter sends a common symbol :math:`v_{k,c}`, a private symbol
:math:`v_{k,p}` and a jamming symbol :math:`u_k`,

.. math::

    x_k = \\sqrt{P^{-\\beta_{v_c}}} h_{\\ell\\ell} v_{k,c}
        + \\sqrt{P^{-\\beta_{v_p}}} h_{\\ell\\ell} v_{k,p}
        + \\sqrt{P^{-\\beta_u}} h_{k\\ell} u_k,
    \\qquad \\ell \\neq k,

where the symbols are drawn uniformly from PAM constellations.  The
jamming symbol of user :math:`k` arrives at receiver :math:`k` aligned
with the common symbol of the other user.

The power exponents :math:`\\beta` and the constellation exponents
:math:`\\lambda` depend on the regime of the cross-link exponent
:math:`\\alpha` (see `build_config()`):

A, :math:`2/3 < \\alpha < 3/4`
    :math:`\\beta = (0, 1-\\alpha, \\alpha)`,
    :math:`\\lambda_{v_c} = \\lambda_u = 3\\alpha - 2 - \\epsilon`,
    :math:`\\lambda_{v_p} = 1 - \\alpha - \\epsilon`
B, :math:`3/4 \\leq \\alpha < 1`
    :math:`\\beta = (0, 1-\\alpha, \\alpha)`,
    :math:`\\lambda_{v_c} = \\lambda_u = \\alpha/3 - \\epsilon`,
    :math:`\\lambda_{v_p} = 1 - \\alpha - \\epsilon`
C, :math:`1 \\leq \\alpha < 3/2`
    :math:`\\beta = (\\alpha - 1, 0, \\infty)`,
    :math:`\\lambda_{v_c} = \\lambda_u = \\alpha/3 - \\epsilon`,
    no private symbol
D, :math:`3/2 \\leq \\alpha \\leq 2`
    :math:`\\beta = (\\alpha - 1, 0, \\infty)`,
    :math:`\\lambda_{v_c} = \\lambda_u = 2 - \\alpha - \\epsilon`,
    no private symbol

with :math:`\\beta` listed as :math:`(\\beta_{v_c}, \\beta_u,
\\beta_{v_p})`.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
from fractions import Fraction as _Fraction
import functools as _functools
import logging as _logging
import math as _math

import numpy as _np

from . import default as _default
from . import pam as _pam
from . import util as _util

_log = _logging.getLogger(__name__)

REGIMES = 'A', 'B', 'C', 'D'
"""Regime labels in order of increasing :math:`\\alpha`."""

GAMMA_MAX = 1 / (4 * _math.sqrt(2))
"""Largest amplitude constant :math:`\\gamma`."""


class SchemeConfig(_namedtuple('SchemeConfig', [
        'regime', 'alpha', 'beta_vc', 'beta_u', 'beta_vp',
        'lambda_vc', 'lambda_u', 'lambda_vp', 'gamma', 'epsilon'])):
    """Named tuple returned by `build_config()`.

    See `collections.namedtuple`.

    Exponents are `fractions.Fraction` objects, except ``beta_vp``,
    which is `math.inf` if the private symbol is not used.

    """

    __slots__ = ()

    @property
    def has_private(self):
        """``True`` if the private symbols :math:`v_{k,p}` are sent."""
        return self.lambda_vp > 0


class SymbolTriple(_namedtuple('SymbolTriple', 'v_c v_p u')):
    """Constellation indices of the symbols of one transmitter.

    ``v_p`` is ``None`` in regimes without private symbols.  Every
    field may also be an integer array.

    """

    __slots__ = ()


class Constellations(_namedtuple('Constellations', 'v_c v_p u')):
    """The `sgic.pam.PamConstellation` of each symbol (``v_p`` may be
    ``None``)."""

    __slots__ = ()


def regime_of(alpha):
    """Return the regime label for a cross-link exponent.

    Boundaries belong to the regime on their right, except for
    :math:`\\alpha = 2`.

    >>> import sgic
    >>> sgic.scheme.regime_of('3/4')
    'B'

    """
    a = _util.as_rational(alpha)
    if a <= _Fraction(2, 3):
        raise ValueError(
            'alpha <= 2/3: no jamming needed, use GWC-TIN instead')
    if a > 2:
        raise ValueError('alpha > 2: the secure GDoF is zero')
    if a < _Fraction(3, 4):
        return 'A'
    if a < 1:
        return 'B'
    if a < _Fraction(3, 2):
        return 'C'
    return 'D'


def build_config(alpha, *, epsilon=None, gamma=None):
    """Power and constellation exponents of the jamming scheme.

    Parameters
    ----------
    alpha : rational
        Cross-link exponent, :math:`2/3 < \\alpha \\leq 2`.
    epsilon : rational, optional
        Positive slack subtracted from the constellation exponents,
        see `sgic.default.epsilon`.
    gamma : float, optional
        Amplitude constant, :math:`0 < \\gamma \\leq 1/(4\\sqrt2)`, see
        `sgic.default.gamma`.

    Returns
    -------
    SchemeConfig

    Examples
    --------
    >>> import sgic
    >>> sc = sgic.scheme.build_config('0.7', epsilon='0.01')
    >>> sc.regime, sc.lambda_vc, sc.lambda_vp
    ('A', Fraction(9, 100), Fraction(29, 100))

    """
    if epsilon is None:
        epsilon = _default.epsilon
    if gamma is None:
        gamma = _default.gamma
    a = _util.as_rational(alpha)
    eps = _util.as_rational(epsilon)
    if eps <= 0:
        raise ValueError('epsilon must be positive')
    gamma = float(gamma)
    if not 0 < gamma <= GAMMA_MAX * (1 + 1e-12):
        raise ValueError('gamma must lie in (0, 1/(4*sqrt(2))]')
    regime = regime_of(a)
    if regime in ('A', 'B'):
        betas = _Fraction(0), 1 - a, a
        lambda_c = 3 * a - 2 - eps if regime == 'A' else a / 3 - eps
        lambda_p = 1 - a - eps
    else:
        betas = a - 1, _Fraction(0), _math.inf
        lambda_c = a / 3 - eps if regime == 'C' else 2 - a - eps
        lambda_p = _Fraction(0)
    if lambda_c <= 0 or (regime in ('A', 'B') and lambda_p <= 0):
        raise ValueError(
            'epsilon = {} too large for alpha = {}: constellation exponents '
            'must be positive'.format(eps, a))
    return SchemeConfig(regime, a, *betas, lambda_c, lambda_c, lambda_p,
                        gamma, eps)


@_functools.lru_cache(maxsize=128)
def constellations(sc, m):
    """PAM constellations of the scheme at :math:`P = 2^{2m}`.

    The half-counts are :math:`Q = \\lfloor P^{\\lambda/2} \\rfloor`.
    Common and jamming symbols use :math:`\\xi = 2\\gamma/Q`, the
    private symbol uses :math:`\\xi = \\gamma/Q`.

    Returns
    -------
    Constellations

    Examples
    --------
    >>> import sgic
    >>> sc = sgic.scheme.build_config('0.7', epsilon='0.01')
    >>> sgic.scheme.constellations(sc, 40).v_c.Q
    12

    """
    Q_c = _util.floor_pow2(m * sc.lambda_vc)
    Q_p = _util.floor_pow2(m * sc.lambda_vp) if sc.has_private else None
    if Q_c < 1 or (Q_p is not None and Q_p < 1):
        raise ValueError(
            'P too small for regime {} with epsilon = {}, increase m'.format(
                sc.regime, sc.epsilon))
    v_c = _pam.PamConstellation(2 * sc.gamma / Q_c, Q_c)
    v_p = _pam.PamConstellation(sc.gamma / Q_p, Q_p) if Q_p else None
    _log.debug('constellations at m=%d: Q_c=%d, Q_p=%s', m, Q_c, Q_p)
    return Constellations(v_c, v_p, v_c)


def check_integrality(sc, m):
    """Exact lattice scale factors of the regimes with lattice decoding.

    In regime B :math:`A_1 = \\sqrt{P^{1-\\alpha}}`, in regime C
    :math:`A_1 = \\sqrt{P^{\\alpha-1}}`, and :math:`A_2 = A_1^2` in both.

    Returns
    -------
    (A1, A2) : pair of int or None
        ``None`` for regimes A and D.

    Raises
    ------
    ValueError
        If :math:`A_1` is not an integer; the message suggests the
        nearest feasible *m*.

    """
    if sc.regime == 'B':
        gap = 1 - sc.alpha
    elif sc.regime == 'C':
        gap = sc.alpha - 1
    else:
        return None
    exponent = m * gap
    if exponent.denominator != 1:
        step = gap.denominator
        suggestion = max(1, round(m / step)) * step
        raise ValueError(
            'regime {} needs an integer m*|1 - alpha| (got {}), '
            'try m = {}'.format(sc.regime, exponent, suggestion))
    A1 = 1 << int(exponent)
    return A1, A1 * A1


def _amplitude(exponent, m):
    """sqrt(P)**(-exponent), zero for an infinite exponent."""
    if exponent == _math.inf:
        return 0.0
    return _util.pow2(-m * exponent)


def symbol_values(cs, symbols):
    """Map a `SymbolTriple` of indices to symbol values."""
    v_p = 0.0
    if symbols.v_p is not None:
        v_p = _np.asarray(symbols.v_p) * float(cs.v_p.xi)
    return (_np.asarray(symbols.v_c) * float(cs.v_c.xi), v_p,
            _np.asarray(symbols.u) * float(cs.u.xi))


def encode(k, sc, h, m, symbols):
    """Channel input of transmitter *k*.

    Parameters
    ----------
    k : {1, 2}
        Transmitter index.
    sc : SchemeConfig
        Scheme configuration.
    h : 2x2 array_like
        Channel phases.
    m : int
        Power exponent.
    symbols : SymbolTriple
        Constellation indices (scalars or arrays).

    Returns
    -------
    float or `numpy.ndarray`

    """
    if k not in (1, 2):
        raise ValueError('user index must be 1 or 2')
    l = 3 - k
    h_ll = h[l - 1][l - 1]
    h_kl = h[k - 1][l - 1]
    v_c, v_p, u = symbol_values(constellations(sc, m), symbols)
    return (_amplitude(sc.beta_vc, m) * h_ll * v_c
            + _amplitude(sc.beta_vp, m) * h_ll * v_p
            + _amplitude(sc.beta_u, m) * h_kl * u)


def draw_symbols(sc, m, rng, size=None):
    """Draw uniform constellation indices of one transmitter.

    The draws are taken from *rng* in the order ``v_c``, ``v_p`` (if
    present), ``u``.

    Returns
    -------
    SymbolTriple

    """
    cs = constellations(sc, m)

    def draw(c):
        return rng.integers(-c.Q, c.Q, size=size, endpoint=True)

    v_c = draw(cs.v_c)
    v_p = draw(cs.v_p) if cs.v_p is not None else None
    return SymbolTriple(v_c, v_p, draw(cs.u))


def entropy_bits(c):
    """Entropy :math:`\\log_2(2Q + 1)` of a uniform PAM symbol."""
    if c is None:
        return 0.0
    return _math.log2(2 * c.Q + 1)


def leakage_upper_bits(sc):
    """Bound on the information a receiver gets about the other user's
    symbols, given its own.

    :math:`\\log_2(2\\sqrt{17})` bits with private symbols (regimes A
    and B), 1 bit otherwise.

    """
    if sc.regime in ('A', 'B'):
        return 1 + _math.log2(17) / 2
    return 1.0


def achievable_gdof_per_user(alpha):
    """Secure GDoF of each user achieved by the jamming scheme."""
    a = _util.as_rational(alpha)
    regime = regime_of(a)
    if regime == 'A':
        return 2 * a - 1
    if regime == 'B':
        return 1 - 2 * a / 3
    if regime == 'C':
        return a / 3
    return 2 - a


def as_json(sc):
    """Return a JSON-compatible `dict` of a `SchemeConfig`.

    Rationals become ``"p/q"`` strings, an infinite exponent becomes
    ``"inf"``.

    """
    data = sc._asdict()
    for key, value in data.items():
        if isinstance(value, _Fraction):
            data[key] = str(value)
        elif value == _math.inf:
            data[key] = 'inf'
    return data
