"""Peristaltic worm robot simulator."""

from ._wormsim import *  # noqa: F401,F403
from ._wormsim import __doc__  # noqa: F401

__version__ = "0.1.0"
