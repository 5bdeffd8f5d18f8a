"""Ore extensions, skew power series and finiteness checks for noncommutative rings."""

from .errors import (BudgetExceeded, DegreeBoundError, DescriptorError, LawViolation, MorphismError,
                     NotEnumerableError, OreLabError, PrecisionError, PreconditionError,
                     RingMismatchError)
from .morphisms import EndoMap, SigmaDerivation, builtin_morphisms
from .ore import OrePoly, OreRing, right_coefficients, weyl_ring
from .report import Check, Report, SuiteResult
from .rings import Element, Ring, make_ring
from .series import SkewSeries, SkewSeriesRing, right_inverse

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Check", "DegreeBoundError", "DescriptorError", "Element", "EndoMap",
    "LawViolation", "MorphismError", "NotEnumerableError", "OreLabError", "OrePoly", "OreRing",
    "PrecisionError", "PreconditionError", "Report", "Ring", "RingMismatchError", "SigmaDerivation",
    "SkewSeries", "SkewSeriesRing", "SuiteResult", "builtin_morphisms", "make_ring",
    "right_coefficients", "right_inverse", "weyl_ring",
]
