"""Finite frames in ``A^m``: bounds, frame operator, canonical dual and Parseval frame."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import module_space as ms
from .cstar import AlgebraShape
from .linalg import numerical_rank
from .errors import (
    ChainNotIncreasing,
    EmptySystem,
    LastNotIdentity,
    NotAFrame,
    NotContraction,
    NotHermitian,
    NotSurjective,
    ShapeMismatch,
)
from .module_space import ModuleOperator, ModuleVector
from .tolerances import TAU_FRAME, TAU_PRUNE, TAU_PSD, TAU_RANK


class FrameSystem:
    """An ordered, nonempty family ``x_1, ..., x_N`` in ``A^m``.

    The synthesis operator ``T: A^N -> A^m`` (``T e^(n) = x_n``), the analysis
    operator ``U = T*`` and the frame operator ``S = U*U`` are computed once,
    at construction.
    """

    __slots__ = ("vectors", "synthesis", "analysis", "frame_operator")

    def __init__(self, vectors: Sequence[ModuleVector]):
        vectors = tuple(vectors)
        if not vectors:
            raise EmptySystem("a frame system needs at least one vector")
        shape, rank = vectors[0].shape, vectors[0].rank
        for v in vectors:
            if v.shape != shape or v.rank != rank:
                raise ShapeMismatch("all vectors must live in the same module")
        self.vectors = vectors
        self.synthesis = ms.operator_from_columns(vectors)
        self.analysis = ms.adjoint(self.synthesis)
        s = ms.compose(self.synthesis, self.analysis)
        self.frame_operator = s._like([0.5 * (b + b.conj().T) for b in s.blocks])

    @classmethod
    def from_analysis(cls, u: ModuleOperator) -> "FrameSystem":
        """The system whose analysis operator is ``u: A^m -> A^N``."""
        return cls.from_synthesis(ms.adjoint(u))

    @classmethod
    def from_synthesis(cls, t: ModuleOperator) -> "FrameSystem":
        return cls([ms.column(t, n) for n in range(t.in_rank)])

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, n):
        return self.vectors[n]

    def __repr__(self):
        return f"FrameSystem(N={len(self)}, m={self.rank}, shape={self.shape.block_dims})"

    @property
    def shape(self) -> AlgebraShape:
        return self.vectors[0].shape

    @property
    def rank(self) -> int:
        return self.vectors[0].rank

    def without(self, j: int) -> "FrameSystem":
        return FrameSystem(self.vectors[:j] + self.vectors[j + 1:])

    def extended(self, more: Sequence[ModuleVector]) -> "FrameSystem":
        return FrameSystem(self.vectors + tuple(more))

    def scaled(self, c: complex) -> "FrameSystem":
        return FrameSystem([v * c for v in self.vectors])


@dataclass(frozen=True)
class FrameReport:
    is_bessel: bool
    is_frame: bool
    lower: float
    upper: float
    is_parseval: bool
    is_tight: bool
    tight_constant: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "A": self.lower,
            "B": self.upper,
            "is_frame": self.is_frame,
            "is_parseval": self.is_parseval,
            "is_tight": self.is_tight,
            "tight_constant": self.tight_constant,
        }


def optimal_bounds(f: FrameSystem) -> tuple:
    """``(A, B)``: extreme eigenvalues of the flattened frame operator."""
    spec = ms.spectra(f.frame_operator)
    lower = min(float(lam[0]) for lam in spec)
    upper = max(float(lam[-1]) for lam in spec)
    return max(lower, 0.0), max(upper, 0.0)


def analyze(f: FrameSystem, tau_frame: float = TAU_FRAME) -> FrameReport:
    lower, upper = optimal_bounds(f)
    is_frame = lower > tau_frame * max(1.0, upper)
    is_parseval = is_frame and abs(lower - 1.0) <= tau_frame and abs(upper - 1.0) <= tau_frame
    is_tight = is_frame and (upper - lower) <= tau_frame * max(1.0, upper)
    tight_constant = 0.5 * (lower + upper) if is_tight else None
    return FrameReport(True, is_frame, lower, upper, is_parseval, is_tight, tight_constant)


def bounds_from_norms(f: FrameSystem) -> tuple:
    """``(A, B)`` from ``sqrt(B) = |U|`` and ``sqrt(A) = |S^(-1/2)|^(-1)``."""
    _require_frame(f)
    upper = ms.operator_norm(f.analysis) ** 2
    lower = ms.operator_norm(inverse_sqrt_frame_operator(f)) ** -2
    return lower, upper


def _require_frame(f: FrameSystem, tau_frame: float = TAU_FRAME):
    rep = analyze(f, tau_frame)
    if not rep.is_frame:
        raise NotAFrame(f"not a frame (A = {rep.lower:.3e}, B = {rep.upper:.3e})")
    return rep


def inverse_frame_operator(f: FrameSystem) -> ModuleOperator:
    _require_frame(f)
    return ms.operator_function(f.frame_operator, lambda t: 1.0 / t)


def inverse_sqrt_frame_operator(f: FrameSystem) -> ModuleOperator:
    _require_frame(f)
    return ms.operator_function(f.frame_operator, lambda t: 1.0 / np.sqrt(t))


def frame_operator_as_theta_sum(f: FrameSystem) -> ModuleOperator:
    """``sum_n theta(x_n, x_n)``, accumulated term by term."""
    total = ms.zero_operator(f.shape, f.rank, f.rank)
    for x in f.vectors:
        total = total + ms.theta(x, x)
    return total


def is_parseval_by_theta(f: FrameSystem, atol: float = 1e-10) -> bool:
    """Parseval test through ``sum_n theta(x_n, x_n) == I``."""
    return frame_operator_as_theta_sum(f).max_abs_diff(ms.identity(f.shape, f.rank)) <= atol


def reconstruct(primal: FrameSystem, dual: FrameSystem, x: ModuleVector) -> ModuleVector:
    """``sum_n y_n <x_n, x>`` with ``y`` the dual family."""
    out = ms.zero_vector(x.shape, x.rank)
    for xn, yn in zip(primal.vectors, dual.vectors):
        out = out + yn * ms.inner_product(xn, x)
    return out


def canonical_dual(f: FrameSystem) -> FrameSystem:
    s_inv = inverse_frame_operator(f)
    return FrameSystem([ms.apply(s_inv, x) for x in f.vectors])


def canonical_parseval(f: FrameSystem) -> FrameSystem:
    s_isqrt = inverse_sqrt_frame_operator(f)
    return FrameSystem([ms.apply(s_isqrt, x) for x in f.vectors])


def frame_from_surjection(t: ModuleOperator, tau_rank: float = TAU_RANK) -> FrameSystem:
    """Frame ``x_n = T e^(n)`` of a surjection ``T: A^N -> A^m``."""
    for n, b in zip(t.shape.block_dims, t.blocks):
        if numerical_rank(b, tau_rank) < t.out_rank * n:
            raise NotSurjective("operator does not have full row rank in every block")
    return FrameSystem.from_synthesis(t)


@dataclass(frozen=True)
class ChainFrame:
    """Output of :func:`parseval_from_unit_chain`.

    ``stage_sizes[i]`` vectors of ``frame`` belong to stage ``i``;
    ``partial_sums[i]`` is the theta-sum through stage ``i`` and
    ``residuals[i] = |partial_sums[i] - E_i|``.
    """

    frame: FrameSystem
    stage_sizes: tuple
    partial_sums: tuple = field(repr=False)
    residuals: tuple = ()


def _check_chain(chain: Sequence[ModuleOperator], tau_psd: float):
    if not chain:
        raise LastNotIdentity("empty chain")
    shape, rank = chain[0].shape, chain[0].out_rank
    eye = ms.identity(shape, rank)
    for e in chain:
        if e.shape != shape or (e.out_rank, e.in_rank) != (rank, rank):
            raise ShapeMismatch("chain members act on different modules")
        if not ms.is_hermitian_operator(e):
            raise NotHermitian("chain members must be Hermitian")
        if not (ms.is_positive_operator(e, tau_psd) and ms.is_positive_operator(eye - e, tau_psd)):
            raise NotContraction("chain members must satisfy 0 <= E <= I")
    for a, b in zip(chain, chain[1:]):
        if not ms.is_positive_operator(b - a, tau_psd):
            raise ChainNotIncreasing("chain is not increasing")
    if ms.operator_norm(chain[-1] - eye) > 1e-9:
        raise LastNotIdentity("last chain member must be the identity")


def parseval_from_unit_chain(chain: Sequence[ModuleOperator], tau_psd: float = TAU_PSD) -> ChainFrame:
    """Parseval frame peeled off an increasing chain ``0 <= E_1 <= ... <= E_last = I``.

    Each increment ``E_i - P_(i-1)`` is split exactly into theta-operators, so
    every partial sum ``P_i`` equals ``E_i`` up to rounding.
    """
    from .extension import positive_theta_decomposition

    _check_chain(chain, tau_psd)
    shape, rank = chain[0].shape, chain[0].out_rank
    partial = ms.zero_operator(shape, rank, rank)
    vectors, sizes, partials, residuals = [], [], [], []
    for e in chain:
        increment = e - partial
        increment = increment._like([0.5 * (b + b.conj().T) for b in increment.blocks])
        stage = [z for z in positive_theta_decomposition(increment, tau_psd) if z.norm() > TAU_PRUNE]
        for z in stage:
            partial = partial + ms.theta(z, z)
        vectors.extend(stage)
        sizes.append(len(stage))
        partials.append(partial)
        residuals.append(ms.operator_norm(partial - e))
    return ChainFrame(FrameSystem(vectors), tuple(sizes), tuple(partials), tuple(residuals))
