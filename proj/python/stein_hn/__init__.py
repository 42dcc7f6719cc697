"""Stein's method for the half-normal: exact random-walk laws, distances and bounds."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
