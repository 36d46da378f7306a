"""Chip-package thermal simulation and heat-spreader metrology."""

from ._spreadersim import *  # noqa: F401,F403
from ._spreadersim import __doc__  # noqa: F401

__version__ = "0.1.0"
