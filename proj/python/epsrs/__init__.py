"""Spectral response strength of exceptional points."""

from ._core import *  # noqa: F401,F403
from ._core import (
    AmbiguousOrderError,
    AtEpError,
    ContourError,
    DomainError,
    Error,
    InputError,
    NotAnEpError,
    NumericalError,
    SeparationError,
)

__version__ = "0.1.0"
