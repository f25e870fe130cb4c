"""Perturbation of frames, removal of elements, nearest Parseval and tight frames."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frames
from . import module_space as ms
from .errors import IndexOutOfRange, ShapeMismatch
from .frames import FrameReport, FrameSystem
from .tolerances import TAU_FRAME


@dataclass(frozen=True)
class PerturbationVerdict:
    distance: float  # |U - V|
    radius: float  # sqrt(A)
    within: bool
    guaranteed_lower: Optional[float]
    per_element_bound: float
    max_element_distance: float

    def as_dict(self) -> dict:
        return {
            "distance": self.distance,
            "radius": self.radius,
            "within": self.within,
            "guaranteed_lower": self.guaranteed_lower,
            "per_element_bound": self.per_element_bound,
            "max_element_distance": self.max_element_distance,
        }


def perturb_check(f: FrameSystem, g: FrameSystem) -> PerturbationVerdict:
    """Is ``g`` inside the open ball of radius ``sqrt(A)`` around ``f``?

    Inside the ball ``g`` is a frame with lower bound at least
    ``(sqrt(A) - |U - V|)^2``.
    """
    if f.shape != g.shape or f.rank != g.rank or len(f) != len(g):
        raise ShapeMismatch(f"{f!r} and {g!r} have different dimensions")
    lower, _ = frames.optimal_bounds(f)
    radius = float(np.sqrt(lower))
    distance = ms.operator_norm(f.analysis - g.analysis)
    within = distance < radius
    guaranteed = (radius - distance) ** 2 if within else None
    elem = max(ms.module_norm(x - y) for x, y in zip(f.vectors, g.vectors))
    return PerturbationVerdict(distance, radius, within, guaranteed, distance, elem)


@dataclass(frozen=True)
class RemovalVerdict:
    removable: bool
    norm: float
    radius: float
    remaining: Optional[FrameReport]


def removal_check(f: FrameSystem, j: int, tau_frame: float = TAU_FRAME) -> RemovalVerdict:
    """``x_j`` can be dropped when ``|x_j| < sqrt(A)``."""
    if not -len(f) <= j < len(f):
        raise IndexOutOfRange(f"index {j} out of range for {len(f)} vectors")
    rep = frames._require_frame(f, tau_frame)
    radius = float(np.sqrt(rep.lower))
    norm = ms.module_norm(f.vectors[j])
    removable = norm < radius - tau_frame
    remaining = frames.analyze(f.without(j % len(f)), tau_frame) if len(f) > 1 else None
    return RemovalVerdict(removable, norm, radius, remaining)


def parseval_distance_formula(lower: float, upper: float) -> float:
    return max(1.0 - np.sqrt(lower), np.sqrt(upper) - 1.0)


def tight_distance_formula(lower: float, upper: float) -> float:
    return 0.5 * (np.sqrt(upper) - np.sqrt(lower))


@dataclass(frozen=True)
class ApproximationResult:
    approx: FrameSystem
    distance: float  # direct |U - V0|
    formula: float
    tight_constant: float

    def as_dict(self) -> dict:
        return {"distance": self.distance, "formula": self.formula, "tight_constant": self.tight_constant}


def best_parseval(f: FrameSystem) -> ApproximationResult:
    """The canonical Parseval frame, nearest to ``f`` among Parseval frames."""
    rep = frames._require_frame(f)
    approx = frames.canonical_parseval(f)
    direct = ms.operator_norm(f.analysis - approx.analysis)
    return ApproximationResult(approx, direct, parseval_distance_formula(rep.lower, rep.upper), 1.0)


def best_tight(f: FrameSystem) -> ApproximationResult:
    """``((sqrt(A) + sqrt(B)) / 2) S^(-1/2) x_n``, nearest among tight frames."""
    rep = frames._require_frame(f)
    scale = 0.5 * (np.sqrt(rep.lower) + np.sqrt(rep.upper))
    approx = frames.canonical_parseval(f).scaled(scale)
    direct = ms.operator_norm(f.analysis - approx.analysis)
    return ApproximationResult(approx, direct, tight_distance_formula(rep.lower, rep.upper), float(scale**2))
