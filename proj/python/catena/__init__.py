"""Flexible string mechanics: critical slopes, shooting BVP solver,
closed-form oracles and a damped bead-chain simulator."""

from ._catena import *  # noqa: F401,F403
from ._catena import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
