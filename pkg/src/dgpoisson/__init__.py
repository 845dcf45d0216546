"""Exact symbolic engine for DG Poisson (Hopf) algebras and their universal enveloping algebras."""

from .gca import *  # noqa: F401,F403
from .poisson import *  # noqa: F401,F403
from .hopf import *  # noqa: F401,F403
from .uea import *  # noqa: F401,F403
from .dsl import *  # noqa: F401,F403
from .report import Report, SuiteReport, Violation

from . import dsl, gca, hopf, poisson, uea

__all__ = gca.__all__ + poisson.__all__ + hopf.__all__ + uea.__all__ + dsl.__all__ + [
    "Report",
    "SuiteReport",
    "Violation",
]
__version__ = "0.1.0"
