"""Swimmer tracking and stroke-rate analytics."""

from ._swimtrack import *  # noqa: F401,F403
from . import _swimtrack as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
