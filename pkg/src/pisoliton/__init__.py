"""Exact symbolic checks for para-Sasaki-like structures on Lie groups."""

from .frame import LieFrame, curvature, levi_civita
from .report import CHECKS, RunReport, SuiteOptions, emit, run_suite
from .scalar import ParamSet, ParseError, Scalar, parse
from .specfile import ManifoldSpec, SpecError, load_spec, loads
from .structure import PiStructure

__version__ = "0.1.0"

__all__ = [
    "CHECKS", "LieFrame", "ManifoldSpec", "ParamSet", "ParseError", "PiStructure", "RunReport",
    "Scalar", "SpecError", "SuiteOptions", "curvature", "emit", "levi_civita", "load_spec",
    "loads", "parse", "run_suite",
]
