"""Driven two-level system simulations.

Angular frequencies are in rad/ns and times in ns; use ``ghz_to_rad_per_ns``
for values quoted in GHz.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

GROUND = (1.0, 0.0)
EXCITED = (0.0, 1.0)
MINUS_Y = (2**-0.5, -1j * 2**-0.5)
