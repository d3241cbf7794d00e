"""Numerical checks for twistor, Hodge and Stokes structures."""
from .verdict import Verdict

__all__ = ["Verdict"]
__version__ = "0.1.0"
