r"""Two-user Gaussian interference channel.

The received signal at user :math:`k` is

.. math::

    y_k = \sum_{l=1}^2 \sqrt{P^{\alpha_{kl}}} h_{kl} x_l + z_k

with :math:`P = 2^{2m}`, link strength exponents :math:`\alpha_{kl} \geq 0`,
channel phases :math:`h_{kl} \in (1, 2]` and unit-variance Gaussian
noise :math:`z_k`.

.. include:: math-definitions.rst

"""
from collections import namedtuple as _namedtuple
import json as _json
import math as _math
import numbers as _numbers

import numpy as _np

from . import util as _util


def as_phases(h):
    """Check a 2x2 phase matrix and return it as a tuple of rows.

    Every phase must lie in the half-open interval (1, 2].

    """
    try:
        rows = tuple(tuple(float(x) for x in row) for row in h)
    except TypeError:
        raise TypeError('expected a 2x2 matrix of phases') from None
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ValueError('expected a 2x2 phase matrix')
    for row in rows:
        for x in row:
            if not 1 < x <= 2:
                raise ValueError('phases must lie in (1, 2], got ' + repr(x))
    return rows


class ChannelConfig(_namedtuple('ChannelConfig', 'm alpha h')):
    """Named tuple describing one channel realization.

    See `collections.namedtuple`.

    Attributes
    ----------
    m : int
        Power exponent, :math:`P = 2^{2m}` and :math:`\\frac12 \\log_2 P = m`.
    alpha : 2x2 tuple of `fractions.Fraction`
        Link strength exponents :math:`\\alpha_{kl}`.
    h : 2x2 tuple of float
        Channel phases :math:`h_{kl}`.

    """

    __slots__ = ()

    def __new__(cls, m, alpha, h):
        if (isinstance(m, bool) or not isinstance(m, _numbers.Integral)
                or m < 1):
            raise ValueError('m must be a positive integer')
        alpha = _util.as_rational_matrix(alpha)
        if any(a < 0 for row in alpha for a in row):
            raise ValueError('strength exponents must be non-negative')
        return super().__new__(cls, int(m), alpha, as_phases(h))

    @property
    def P(self):
        """Transmit power :math:`P = 2^{2m}` (an exact integer)."""
        return 4**self.m

    def swap_users(self):
        """Return the channel seen with the roles of both users exchanged."""
        (a11, a12), (a21, a22) = self.alpha
        return ChannelConfig(self.m, ((a22, a21), (a12, a11)),
                             swap_users(self.h))


class SymmetricChannel(_namedtuple('SymmetricChannel', 'm alpha h')):
    """Symmetric channel with :math:`\\alpha_{11} = \\alpha_{22} = 1`.

    The cross links share the exponent :math:`\\alpha_{12} = \\alpha_{21}
    = \\alpha`.  Use `expand()` or `as_channel_config()` to get the
    full `ChannelConfig`.

    """

    __slots__ = ()

    def __new__(cls, m, alpha, h):
        alpha = _util.as_rational(alpha)
        return super().__new__(cls, m, alpha, h)

    def expand(self):
        """Return the equivalent `ChannelConfig`."""
        return ChannelConfig(self.m, ((1, self.alpha), (self.alpha, 1)),
                             self.h)


def as_channel_config(arg):
    """Create a `ChannelConfig` from a symmetric channel or a mapping."""
    if isinstance(arg, ChannelConfig):
        return arg
    if isinstance(arg, SymmetricChannel):
        return arg.expand()
    if isinstance(arg, dict):
        return from_json(arg)
    raise TypeError('expected a channel configuration, got ' + repr(arg))


def swap_users(h):
    """Exchange the roles of both users in a 2x2 matrix."""
    (h11, h12), (h21, h22) = h
    return (h22, h21), (h12, h11)


def log2_gain(cfg, k, l):
    r"""Base-2 logarithm of the effective gain of link *l* → *k*.

    .. math::

        \log_2 \left(\sqrt{P^{\alpha_{kl}}} h_{kl}\right)
            = m \alpha_{kl} + \log_2 h_{kl}

    This never overflows, unlike `effective_gain()`.

    """
    return (float(cfg.m * cfg.alpha[k - 1][l - 1])
            + _math.log2(cfg.h[k - 1][l - 1]))


def effective_gain(cfg, k, l):
    """Amplitude gain of link *l* → *k*.

    The gain is :math:`\\sqrt{P^{\\alpha_{kl}}} h_{kl}`.  The power of two
    is applied with :func:`math.ldexp`, so the result
    is exact for integer :math:`m \\alpha_{kl}`.  For gains beyond the
    double-precision range an `OverflowError` is raised; use
    `log2_gain()` in that case.

    Parameters
    ----------
    cfg : ChannelConfig
        Channel configuration.
    k, l : {1, 2}
        Receiver and transmitter index.

    Examples
    --------
    >>> import sgic
    >>> cfg = sgic.channel.ChannelConfig(10, [[1, '1/2'], ['1/2', 1]],
    ...                                  [[2, 1.5], [1.5, 2]])
    >>> sgic.channel.effective_gain(cfg, 1, 1)
    2048.0

    """
    if k not in (1, 2) or l not in (1, 2):
        raise ValueError('user indices must be 1 or 2')
    exponent = cfg.m * cfg.alpha[k - 1][l - 1]
    whole = _math.floor(exponent)
    try:
        fraction = 2.0 ** float(exponent - whole)
        return _math.ldexp(cfg.h[k - 1][l - 1] * fraction, whole)
    except OverflowError:
        raise OverflowError(
            'gain exceeds double range, use log2_gain() instead') from None


def transmit(cfg, x1, x2, z1, z2):
    """Pass channel inputs through the interference channel.

    Parameters
    ----------
    cfg : ChannelConfig
        Channel configuration.
    x1, x2 : float or array_like
        Channel inputs of both transmitters.
    z1, z2 : float or array_like
        Noise samples at both receivers (unit variance by contract).

    Returns
    -------
    y1, y2 : float or `numpy.ndarray`
        Received signals.  All arguments are broadcast against each
        other.

    """
    x1, x2, z1, z2 = (_np.asarray(x, dtype=float) for x in (x1, x2, z1, z2))
    y1 = effective_gain(cfg, 1, 1) * x1 + effective_gain(cfg, 1, 2) * x2 + z1
    y2 = effective_gain(cfg, 2, 1) * x1 + effective_gain(cfg, 2, 2) * x2 + z2
    return y1, y2


def sample_noise(rng, size=None):
    """Draw standard normal noise samples from a seeded generator.

    Parameters
    ----------
    rng : numpy.random.Generator
        See `sgic.util.rng_stream()`.
    size : int or tuple of int, optional
        Output shape, a single float by default.

    """
    return rng.standard_normal(size)


def random_phases(rng):
    """Draw a 2x2 phase matrix uniformly from :math:`(1, 2]^4`."""
    return as_phases(2 - rng.random((2, 2)))


def as_json(cfg):
    """Return a JSON-compatible `dict`, rationals as ``"p/q"`` strings."""
    return {
        'm': cfg.m,
        'alpha': [[str(a) for a in row] for row in cfg.alpha],
        'h': [list(row) for row in cfg.h],
    }


def from_json(data):
    """Create a `ChannelConfig` from a `dict` or a JSON string."""
    if isinstance(data, str):
        data = _json.loads(data)
    try:
        return ChannelConfig(data['m'], data['alpha'], data['h'])
    except KeyError as e:
        raise ValueError('missing channel field: ' + str(e)) from None


def load(file):
    """Load a `ChannelConfig` from a JSON file."""
    with open(file, encoding='utf-8') as f:
        return from_json(_json.load(f))
