"""Relative entropies of diffeomorphism-induced states, flows and cocycles."""

from ._core import *  # noqa: F401,F403
from ._core import Error, DomainError, SpecError, NumericalError  # noqa: F401

__version__ = "0.1.0"
