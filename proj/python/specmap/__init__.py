"""Spectrum map simulation, classical reconstruction and evaluation."""

from ._specmap import *  # noqa: F401,F403
from ._specmap import __doc__  # noqa: F401

DEFAULT_FREQUENCIES_MHZ = (900.0, 1500.0, 1800.0, 2100.0)
