"""Excitable network attractors in continuous-time recurrent neural networks."""

from ._exnet import *  # noqa: F401,F403
from ._exnet import ExnetError

__all__ = [name for name in dir() if not name.startswith("_")]
