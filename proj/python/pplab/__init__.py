"""Python front end for the pplab C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import Error, ResourceError, DomainError, NumericIntegrityError

__all__ = [n for n in dir() if not n.startswith("_")]
