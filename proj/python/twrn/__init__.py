"""Two-way relay network performance toolkit (AF/DF, Rayleigh fading)."""

from ._twrn import *  # noqa: F401,F403
from ._twrn import __doc__  # noqa: F401
