"""Numerical workbench for orthogonal polynomial systems."""

from . import (cli, discrete, families, io, kernels, measures, momentprob,
               qseries, recurrence)
from .families import FamilySpec
from .kernels import QuadratureRule
from .measures import Measure, MomentSequence
from .recurrence import NormData, RecurrenceSystem

__version__ = "0.1.0"

__all__ = [
    "FamilySpec", "Measure", "MomentSequence", "NormData", "QuadratureRule",
    "RecurrenceSystem", "cli", "discrete", "families", "io", "kernels",
    "measures", "momentprob", "qseries", "recurrence",
]
