"""Various utility functions.

.. include:: math-definitions.rst

"""

from fractions import Fraction
import math
import numbers

import numpy as np
from scipy import stats

from . import default


def as_rational(value):
    """Convert *value* to a `fractions.Fraction`.

    Parameters
    ----------
    value : int, float, str or Fraction
        Strings may be decimal (``'0.85'``) or ratios (``'2/3'``).
        Floats are converted via their shortest decimal representation,
        i.e. ``0.7`` becomes ``7/10`` and not the nearest binary
        fraction.

    Returns
    -------
    `fractions.Fraction`

    Examples
    --------
    >>> import sgic
    >>> sgic.util.as_rational('2/3')
    Fraction(2, 3)
    >>> sgic.util.as_rational(0.85)
    Fraction(17, 20)

    """
    if isinstance(value, bool):
        raise TypeError('expected a number, not a bool')
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Real):
        if not math.isfinite(value):
            raise ValueError('expected a finite number, got ' + repr(value))
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError('invalid rational: ' + repr(value)) from None
    raise TypeError('expected a rational number, got ' + repr(value))


def as_rational_matrix(a):
    """Convert a 2x2 nested sequence to a tuple of `Fraction` rows."""
    try:
        rows = tuple(tuple(as_rational(x) for x in row) for row in a)
    except TypeError:
        raise TypeError('expected a 2x2 matrix of rationals') from None
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ValueError('expected a 2x2 matrix')
    return rows


def positive_part(x):
    """Return ``max(x, 0)``, keeping the type of *x*."""
    return x if x > 0 else x * 0


def pow2(exponent):
    r"""Compute :math:`2^e` as float, exactly for integer *e*.

    The integer part of the exponent is applied with :func:`math.ldexp`,
    so results like :math:`\sqrt{P}^{1-\alpha}` are exact whenever
    :math:`m(1-\alpha)` is an integer.

    """
    e = as_rational(exponent)
    whole = math.floor(e)
    return math.ldexp(2.0 ** float(e - whole), whole)


def floor_pow2(exponent):
    r"""Exact :math:`\lfloor 2^e \rfloor` for a rational exponent *e*.

    Uses integer arithmetic to correct the floating point estimate.

    """
    e = as_rational(exponent)
    if e < 0:
        return 0
    if e > 1000:
        raise ValueError('exponent too large: ' + str(e))
    p, q = e.numerator, e.denominator
    target = 1 << p
    n = int(pow2(e))
    while n ** q > target:
        n -= 1
    while (n + 1) ** q <= target:
        n += 1
    return n


def log2_1p_sum(*log2_terms):
    r"""Compute :math:`\log_2(1 + \sum_i 2^{t_i})` without overflow.

    Parameters
    ----------
    *log2_terms : float or array_like
        Base-2 logarithms :math:`t_i` of the summands.  Arrays are
        broadcast against each other.

    """
    result = np.float64(0)
    for t in log2_terms:
        result = np.logaddexp2(result, np.asarray(t, dtype=float))
    return result


def rational_grid(start, stop, step, *, endpoint=True):
    """Like `numpy.arange`, but exact with rational numbers.

    Parameters
    ----------
    start, stop, step : rational
        Anything `as_rational()` accepts.
    endpoint : bool, optional
        If ``True`` (the default), *stop* is included.

        .. note:: With ``endpoint=True``, the difference between *start*
           and *stop* must be an integer multiple of *step*!

    Returns
    -------
    list of `fractions.Fraction`

    """
    start, stop, step = (as_rational(x) for x in (start, stop, step))
    if step <= 0:
        raise ValueError('step must be positive')
    count = (stop - start) / step
    if count < 0:
        raise ValueError('stop must not be smaller than start')
    if endpoint:
        if count.denominator != 1:
            raise ValueError("Invalid stop value for endpoint=True")
        n = int(count) + 1
    else:
        n = math.ceil(count)
    return [start + i * step for i in range(n)]


def parse_grid(text):
    """Parse a ``start:step:stop`` string into an inclusive rational grid.

    >>> import sgic
    >>> len(sgic.util.parse_grid('0:0.05:2.2'))
    45

    """
    parts = text.split(':')
    if len(parts) != 3:
        raise ValueError('grid must have the form start:step:stop')
    start, step, stop = parts
    return rational_grid(start, stop, step, endpoint=True)


def rng_stream(seed, *key):
    """Return an independent `numpy.random.Generator` for *(seed, key)*.

    Streams with different keys are statistically independent, and the
    same *(seed, key)* always yields the same sequence.

    """
    if seed is None:
        seed = default.seed
    if seed < 0:
        raise ValueError('seed must be non-negative')
    return np.random.default_rng([int(seed), *(int(k) for k in key)])


def binomial_interval(k, n, *, confidence=None):
    """Wilson score interval for *k* successes in *n* trials.

    Returns
    -------
    (low, high) : pair of float

    """
    if confidence is None:
        confidence = default.confidence
    if n < 1:
        raise ValueError('at least one trial is needed')
    ci = stats.binomtest(int(k), int(n)).proportion_ci(
        confidence_level=confidence, method='wilson')
    return float(ci.low), float(ci.high)
