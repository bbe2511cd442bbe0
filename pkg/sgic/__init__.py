"""Secure Gaussian Interference Channel Toolbox.

Bounds, cooperative-jamming schemes and decoders for the two-user
Gaussian interference channel with confidential messages.

.. rubric:: Submodules

.. autosummary::
    :toctree:

    channel
    bounds
    pam
    scheme
    decoder
    sim
    cli
    util

"""
__version__ = "0.1.0"

from fractions import Fraction as _Fraction
import math as _math


class default:
    """Get/set defaults for the *sgic* module.

    For example, when you want to change the default slack of the
    jamming schemes::

        import sgic
        sgic.default.epsilon = '1/20'

    Rational settings may be given as anything `sgic.util.as_rational()`
    accepts; they are converted where they are used.

    """

    epsilon = _Fraction(1, 100)
    """Slack subtracted from the constellation exponents."""

    gamma = 1 / (4 * _math.sqrt(2))
    """Amplitude constant of the jamming schemes (largest allowed)."""

    delta = _Fraction(1, 10)
    """Minimum-distance threshold constant of the outage test."""

    seed = 20190722
    """Seed used when none is given."""

    n_trials = 10000
    """Number of Monte Carlo channel uses per simulation point."""

    enumeration_budget = 10**8
    """Largest number of lattice candidates a search may enumerate."""

    beta_grid_step = _Fraction(1, 64)
    """Grid spacing of the GWC-TIN power-exponent search."""

    noise_allowance = 5.0
    """Residual slack (in noise standard deviations) of reliable stages."""

    block_size = 1000
    """Number of consecutive trials sharing one random stream."""

    gap_limit = 11
    """Largest admissible gap (in bits) between the capacity bounds."""

    confidence = 0.95
    """Confidence level of reported binomial intervals."""

    def __setattr__(self, name, value):
        """Only allow setting existing attributes."""
        if name in dir(self) and name != 'reset':
            super().__setattr__(name, value)
        else:
            raise AttributeError(
                '"default" object has no attribute ' + repr(name))

    def reset(self):
        """Reset all attributes to their "factory default"."""
        vars(self).clear()


import sys as _sys
if not getattr(_sys.modules.get('sphinx'), 'SGIC_DOCS_ARE_BEING_BUILT', False):
    # This object shadows the 'default' class, except when the docs are built:
    default = default()

from . import util
from . import channel
from . import bounds
from . import pam
from . import scheme
from . import decoder
from . import sim
