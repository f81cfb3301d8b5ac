"""Fully correlated two-qutrit multi-level amplitude damping channels."""
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND

__version__ = "0.1.0"
