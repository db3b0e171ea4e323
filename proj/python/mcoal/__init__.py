"""Distinguished coalescents, paint-boxes, and the dual GFVI process."""

from _mcoal import *  # noqa: F401,F403
from _mcoal import __doc__  # noqa: F401
