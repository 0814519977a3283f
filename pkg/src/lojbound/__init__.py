"""Certified upper bounds and sampled lower bounds for the gradient exponent of
non-degenerate holomorphic and mixed polynomial germs."""

from .bounds import BoundConfig, BoundReport, bracket, convenience_exponents, decompose_join, upper_bound
from .curves import CurveBudget, MonomialCurve, curve_exponent, curve_orders, sample_lower_bound
from .gaussian import QQi
from .mixedpoly import MixedFunction, VariableSubset, parse
from .nondeg import NDBudget

__all__ = [
    "BoundConfig", "BoundReport", "CurveBudget", "MixedFunction", "MonomialCurve", "NDBudget",
    "QQi", "VariableSubset", "bracket", "convenience_exponents", "curve_exponent", "curve_orders",
    "decompose_join", "parse", "sample_lower_bound", "upper_bound",
]
