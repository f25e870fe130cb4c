"""Dual frames: verification, parametrisation, oblique projections, Parseval duals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import frames
from . import linalg
from . import module_space as ms
from .errors import InsufficientCorank, LowerBoundBelowOne, NotDual, ShapeMismatch
from .frames import FrameSystem
from .module_space import ModuleOperator
from .tolerances import TAU_DUAL, TAU_FRAME, TAU_PSD, TAU_RANK


def _check_compatible(f: FrameSystem, g: FrameSystem):
    if f.shape != g.shape or f.rank != g.rank or len(f) != len(g):
        raise ShapeMismatch(f"{f!r} and {g!r} are not comparable")


def cross_operator(f: FrameSystem, g: FrameSystem) -> ModuleOperator:
    """``V*U = sum_n theta(y_n, x_n)`` for ``f = (x_n)``, ``g = (y_n)``."""
    _check_compatible(f, g)
    return ms.compose(g.synthesis, f.analysis)


class DualCheck(NamedTuple):
    ok: bool
    residual: float


def is_dual(f: FrameSystem, g: FrameSystem, tau_dual: float = TAU_DUAL) -> DualCheck:
    """``|V*U - I| <= tau_dual``; symmetric in ``f`` and ``g``."""
    residual = ms.operator_norm(cross_operator(f, g) - ms.identity(f.shape, f.rank))
    return DualCheck(residual <= tau_dual, residual)


@dataclass(frozen=True)
class DualPair:
    primal: FrameSystem
    dual: FrameSystem
    residual: float


def dual_pair(f: FrameSystem, g: FrameSystem, tau_dual: float = TAU_DUAL) -> DualPair:
    check = is_dual(f, g, tau_dual)
    if not check.ok:
        raise NotDual(f"|V*U - I| = {check.residual:.3e} exceeds {tau_dual:.1e}")
    return DualPair(f, g, check.residual)


def _as_pair(pair, tau_dual: float = TAU_DUAL) -> DualPair:
    # recheck: a DualPair can be built by hand
    if pair.residual > tau_dual or not is_dual(pair.primal, pair.dual, tau_dual).ok:
        raise NotDual("pair is not dual")
    return pair


def range_complement_projection(f: FrameSystem) -> ModuleOperator:
    """``P = I - U S^(-1) U*``, the orthogonal projection onto ``R(U)``'s complement."""
    u = f.analysis
    s_inv = frames.inverse_frame_operator(f)
    p = ms.identity(f.shape, len(f)) - ms.compose(ms.compose(u, s_inv), ms.adjoint(u))
    return p._like([0.5 * (b + b.conj().T) for b in p.blocks])


def dual_from_parameter(f: FrameSystem, param: ModuleOperator) -> FrameSystem:
    """Dual with analysis operator ``V = U S^(-1) + (I - U S^(-1) U*) L``.

    ``param`` is ``L: A^m -> A^N``. Every dual arises this way (take ``L = V``).
    """
    if param.shape != f.shape or (param.out_rank, param.in_rank) != (len(f), f.rank):
        raise ShapeMismatch(f"parameter {param!r} must map A^{f.rank} to A^{len(f)}")
    u = f.analysis
    s_inv = frames.inverse_frame_operator(f)
    v = ms.compose(u, s_inv) + ms.compose(range_complement_projection(f), param)
    return FrameSystem.from_analysis(v)


@dataclass(frozen=True)
class ObliqueReport:
    projection: ModuleOperator
    idempotency_residual: float
    range_residual: float
    corange_residual: float
    hermitian_residual: float

    @property
    def is_orthogonal(self) -> bool:
        return self.hermitian_residual <= 1e-9


def oblique_structure(pair: DualPair) -> ObliqueReport:
    """``F = U V*``: idempotent, ``F U = U`` and ``V* F = V*``."""
    pair = _as_pair(pair)
    u, v = pair.primal.analysis, pair.dual.analysis
    vs = ms.adjoint(v)
    proj = ms.compose(u, vs)
    return ObliqueReport(
        projection=proj,
        idempotency_residual=ms.operator_norm(ms.compose(proj, proj) - proj),
        range_residual=ms.operator_norm(ms.compose(proj, u) - u),
        corange_residual=ms.operator_norm(ms.compose(vs, proj) - vs),
        hermitian_residual=ms.operator_norm(proj - ms.adjoint(proj)),
    )


def dual_from_projection(f: FrameSystem, proj: ModuleOperator) -> ModuleOperator:
    """Analysis operator ``F* U S^(-1)`` of the dual attached to an oblique projection."""
    return ms.compose(ms.compose(ms.adjoint(proj), f.analysis), frames.inverse_frame_operator(f))


def minimality_margin(pair: DualPair) -> float:
    """Smallest eigenvalue of ``V*V - S^(-1)``."""
    pair = _as_pair(pair)
    v = pair.dual.analysis
    gap = ms.compose(ms.adjoint(v), v) - frames.inverse_frame_operator(pair.primal)
    gap = gap._like([0.5 * (b + b.conj().T) for b in gap.blocks])
    return ms.min_eigenvalue(gap)


def minimality_check(pair: DualPair, tau_psd: float = TAU_PSD) -> bool:
    """Canonical-dual coefficients are minimal: ``S^(-1) <= V*V``."""
    pair = _as_pair(pair)
    v = pair.dual.analysis
    gap = ms.compose(ms.adjoint(v), v) - frames.inverse_frame_operator(pair.primal)
    gap = gap._like([0.5 * (b + b.conj().T) for b in gap.blocks])
    return ms.is_positive_operator(gap, tau_psd)


def _complement_basis(p_block: np.ndarray, count: int) -> np.ndarray:
    # orthonormal eigenvectors of the projection belonging to eigenvalue 1
    eig = linalg.eig_hermitian(p_block)
    return eig.eigenvectors[:, eig.eigenvalues.size - count:]


@dataclass(frozen=True)
class ParsevalDualCertificate:
    """Per-block data behind a Parseval dual: ``S - I = T* P T``."""

    excess_ranks: tuple
    coranks: tuple
    witness: ModuleOperator


def parseval_dual_certificate(f: FrameSystem, tau_frame: float = TAU_FRAME) -> ParsevalDualCertificate:
    """Build ``T`` with ``U*U - I = T* P T`` or raise an ExistenceFailure."""
    rep = frames._require_frame(f, tau_frame)
    tol = tau_frame * max(1.0, rep.upper)
    if rep.lower < 1.0 - tol:
        raise LowerBoundBelowOne(f"lower frame bound {rep.lower:.6g} < 1")
    n_vec = len(f)
    p = range_complement_projection(f)
    excess_ranks, coranks, t_blocks = [], [], []
    for d, s_block, u_block, p_block in zip(f.shape.block_dims, f.frame_operator.blocks, f.analysis.blocks, p.blocks):
        excess = s_block - np.eye(s_block.shape[0])
        eig = linalg.eig_hermitian(excess)
        keep = eig.eigenvalues > tol
        rank_excess = int(np.count_nonzero(keep))
        corank = n_vec * d - linalg.numerical_rank(u_block, TAU_RANK)
        excess_ranks.append(rank_excess)
        coranks.append(corank)
        if rank_excess > corank:
            raise InsufficientCorank(
                f"rank(S - I) = {rank_excess} exceeds dim R(U)^perp = {corank}"
            )
        q = _complement_basis(p_block, corank)[:, :rank_excess]
        lam = eig.eigenvalues[keep]
        u_vecs = eig.eigenvectors[:, keep]
        t_blocks.append((q * np.sqrt(lam)) @ u_vecs.conj().T)
    witness = ModuleOperator(f.shape, n_vec, f.rank, t_blocks)
    return ParsevalDualCertificate(tuple(excess_ranks), tuple(coranks), witness)


def parseval_dual(f: FrameSystem, tau_frame: float = TAU_FRAME) -> FrameSystem:
    """A Parseval frame dual to ``f``: ``V = U S^(-1) + P T S^(-1/2)``."""
    cert = parseval_dual_certificate(f, tau_frame)
    s_inv = frames.inverse_frame_operator(f)
    s_isqrt = frames.inverse_sqrt_frame_operator(f)
    p = range_complement_projection(f)
    v = ms.compose(f.analysis, s_inv) + ms.compose(ms.compose(p, cert.witness), s_isqrt)
    return FrameSystem.from_analysis(v)


def has_unique_dual(f: FrameSystem, tau_rank: float = TAU_RANK) -> bool:
    """The canonical dual is the only dual iff ``U`` is onto ``A^N``."""
    frames._require_frame(f)
    n_vec = len(f)
    return all(
        linalg.numerical_rank(b, tau_rank) == n_vec * d for d, b in zip(f.shape.block_dims, f.analysis.blocks)
    )


@dataclass(frozen=True)
class UniqueDualReport:
    unique: bool
    orthonormality_residual: Optional[float] = None
    gram_invertible: Optional[bool] = None
    unitary_residual: Optional[float] = None


def unique_dual_report(f: FrameSystem) -> UniqueDualReport:
    """Verdict plus, when unique, the consequences for the canonical Parseval frame."""
    if not has_unique_dual(f):
        return UniqueDualReport(False)
    from .cstar import alg_inv
    from .errors import SingularElement

    par = frames.canonical_parseval(f)
    e = ms.identity(f.shape, len(f))
    gram = ms.compose(par.analysis, par.synthesis)  # <y_m, y_n> grid
    orth = gram.max_abs_diff(e)
    w = par.analysis
    unitary = max(
        ms.operator_norm(ms.compose(ms.adjoint(w), w) - ms.identity(f.shape, f.rank)),
        ms.operator_norm(ms.compose(w, ms.adjoint(w)) - e),
    )
    invertible = True
    for x in f.vectors:
        try:
            alg_inv(ms.inner_product(x, x))
        except SingularElement:
            invertible = False
    return UniqueDualReport(True, orth, invertible, unitary)


@dataclass(frozen=True)
class PseudodualResult:
    ok: bool
    corrected_dual: Optional[FrameSystem] = None


def pseudodual_check(f: FrameSystem, g: FrameSystem) -> PseudodualResult:
    """``V*U`` invertible; then ``((V*U)^(-1) y_n)`` is dual to ``f``."""
    vu = cross_operator(f, g)
    if not ms.is_invertible(vu):
        return PseudodualResult(False)
    corr = ms.inverse(vu)
    return PseudodualResult(True, FrameSystem([ms.apply(corr, y) for y in g.vectors]))
