"""Frames in Hilbert C*-modules ``A^m`` over ``A = M_{n_1} + ... + M_{n_K}``."""

from .cstar import AlgebraElement, AlgebraShape
from .errors import ModframeError, PreconditionError, ShapeError
from .frames import FrameReport, FrameSystem, analyze, canonical_dual, canonical_parseval
from .module_space import ModuleOperator, ModuleVector

__all__ = [
    "AlgebraElement",
    "AlgebraShape",
    "FrameReport",
    "FrameSystem",
    "ModframeError",
    "ModuleOperator",
    "ModuleVector",
    "PreconditionError",
    "ShapeError",
    "analyze",
    "canonical_dual",
    "canonical_parseval",
]

__version__ = "0.1.0"
