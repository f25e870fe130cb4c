"""Square-root factorisation under a dominating inner product, theta
decompositions of positive operators and finite extensions of Bessel systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frames
from . import module_space as ms
from .cstar import AlgebraElement, alg_leq, alg_sqrt, spectral
from .errors import BesselBoundExceedsOne, NonSquare, NotDominated, NotPositive, ShapeMismatch
from .frames import FrameSystem
from .linalg import eig_hermitian, psd_check
from .module_space import ModuleOperator, ModuleVector
from .tolerances import TAU_FRAME, TAU_PRUNE, TAU_PSD, TAU_RANK

_GAP_FLOOR = 64 * np.finfo(float).eps


def _pseudo_power(c: AlgebraElement, p: float, tau_rank: float = TAU_RANK) -> AlgebraElement:
    """``c^p`` on the support of a positive ``c``, zero on its kernel."""
    floor = tau_rank * c.norm()

    def f(t):
        out = np.zeros_like(t)
        big = t > floor
        out[big] = t[big] ** p
        return out

    return spectral(c, f)


def _check_dominated(x: ModuleVector, a: AlgebraElement, tau_psd: float):
    if a.shape != x.shape:
        raise ShapeMismatch("element and vector live over different algebras")
    c = ms.inner_product(x, x)
    if not alg_leq(a * 0.0, a, tau_psd):
        raise NotPositive("a is not positive")
    if not alg_leq(a, c, tau_psd):
        raise NotDominated("a is not dominated by <x, x>")
    return c


@dataclass(frozen=True)
class SqrtFactorData:
    """Intermediate objects of the factorisation ``a = <z, z>``."""

    v: ModuleVector  # x = v <v, v>
    y: ModuleVector  # y = v <v, v>^(1/4)
    c: AlgebraElement  # <y, y> = <x, x>^(1/2)
    b: AlgebraElement  # lim (c + e/n)^(-1/2) a^(1/2)
    z: ModuleVector


def dominated_sqrt_data(x: ModuleVector, a: AlgebraElement, tau_psd: float = TAU_PSD) -> SqrtFactorData:
    gram = _check_dominated(x, a, tau_psd)
    v = x * _pseudo_power(gram, -1.0 / 3.0)
    vv = ms.inner_product(v, v)
    vv = AlgebraElement(vv.shape, [0.5 * (m + m.conj().T) for m in vv.blocks])
    y = v * _pseudo_power(vv, 0.25)
    c = ms.inner_product(y, y)
    c = AlgebraElement(c.shape, [0.5 * (m + m.conj().T) for m in c.blocks])
    b = _pseudo_power(c, -0.5) * alg_sqrt(a)
    return SqrtFactorData(v, y, c, b, y * b)


def dominated_sqrt_factor(x: ModuleVector, a: AlgebraElement, tau_psd: float = TAU_PSD) -> ModuleVector:
    """``z`` with ``<z, z> = a`` for ``0 <= a <= <x, x>``."""
    return dominated_sqrt_data(x, a, tau_psd).z


@dataclass(frozen=True)
class SequenceTrace:
    """``b_n = (c + e/n)^(-1/2) a^(1/2)`` against its limit ``b``."""

    ns: tuple
    residuals: tuple  # |b_n - b|
    cauchy: tuple  # |b_2n - b_n| for the n with 2n in ns
    inner_residuals: tuple  # |<y b_n, y b_n> - a|
    monotone: bool


def approximating_sequence(x: ModuleVector, a: AlgebraElement, n_max: int = 64, tau_psd: float = TAU_PSD) -> SequenceTrace:
    """Iterate the approximating sequence for ``n = 1..n_max``."""
    data = dominated_sqrt_data(x, a, tau_psd)
    root_a = alg_sqrt(a)
    eig = [eig_hermitian(m) for m in data.c.blocks]
    ns = tuple(range(1, n_max + 1))
    bs = {}
    for n in ns:
        blocks = []
        for e, ra in zip(eig, root_a.blocks):
            lam = np.clip(e.eigenvalues, 0.0, None) + 1.0 / n
            q = e.eigenvectors
            blocks.append((q * lam ** -0.5) @ q.conj().T @ ra)
        bs[n] = AlgebraElement(a.shape, blocks)
    residuals = tuple((bs[n] - data.b).norm() for n in ns)
    cauchy = tuple((bs[2 * n] - bs[n]).norm() for n in ns if 2 * n in bs)
    inner = tuple((ms.inner_product(data.y * bs[n], data.y * bs[n]) - a).norm() for n in ns)
    slack = 1e-12
    monotone = all(r2 <= r1 + slack for r1, r2 in zip(residuals, residuals[1:]))
    return SequenceTrace(ns, residuals, cauchy, inner, monotone)


def positive_theta_decomposition(t: ModuleOperator, tau_psd: float = TAU_PSD) -> list:
    """``m`` vectors with ``sum_q theta(x_q, x_q) = T`` for positive ``T`` on ``A^m``.

    Block ``k`` of ``x_q`` is the ``q``-th column strip of ``sqrt(T_k)``.
    """
    if not t.is_square:
        raise NonSquare(f"{t!r} is not an operator on A^m")
    m = t.in_rank
    roots = []
    for b in t.blocks:
        chk = psd_check(b, tau_psd)
        if not chk.is_psd:
            raise NotPositive(f"operator has eigenvalue {chk.min_eig:.3e} < 0")
        e = eig_hermitian(b)
        q = e.eigenvectors
        roots.append((q * np.sqrt(np.clip(e.eigenvalues, 0.0, None))) @ q.conj().T)
    out = []
    for qi in range(m):
        blocks = [r[:, qi * n:(qi + 1) * n] for n, r in zip(t.shape.block_dims, roots)]
        out.append(ModuleVector(t.shape, m, blocks))
    return out


@dataclass(frozen=True)
class ExtensionResult:
    added: tuple
    combined: FrameSystem
    input_upper: float
    lower: float
    upper: float
    residual: Optional[float] = None  # |I - S_combined|, Parseval target only
    witness: tuple = ()  # theta-witness vectors for I - V*U


def extend_to_frame(f: FrameSystem) -> ExtensionResult:
    """Append the ``m`` standard generators; the result is a frame with ``A >= 1``."""
    gens = [ms.basis_vector(f.shape, f.rank, q) for q in range(f.rank)]
    combined = f.extended(gens)
    rep = frames.analyze(combined)
    # I - V*U restricted to the input system, V the canonical dual of the combination
    dual = frames.canonical_dual(combined)
    n = len(f)
    g = FrameSystem(dual.vectors[:n])
    defect = ms.identity(f.shape, f.rank) - ms.compose(g.synthesis, f.analysis)
    # equals sum over the generators of theta(S^-1 e_q, e_q), a finite theta sum
    witness = tuple(zip(dual.vectors[n:], gens))
    return ExtensionResult(
        added=tuple(gens),
        combined=combined,
        input_upper=frames.optimal_bounds(f)[1],
        lower=rep.lower,
        upper=rep.upper,
        residual=_theta_witness_residual(defect, witness),
        witness=witness,
    )


def _theta_witness_residual(defect: ModuleOperator, witness) -> float:
    total = ms.zero_operator(defect.shape, defect.out_rank, defect.in_rank)
    for y, x in witness:
        total = total + ms.theta(y, x)
    return ms.operator_norm(total - defect)


def extend_to_parseval(f: FrameSystem, tau_frame: float = TAU_FRAME) -> ExtensionResult:
    """Append at most ``m`` vectors so that the combined system is Parseval.

    Possible exactly when the optimal Bessel bound is at most one.
    """
    upper = frames.optimal_bounds(f)[1]
    if upper > 1.0 + tau_frame:
        raise BesselBoundExceedsOne(f"Bessel bound {upper:.6g} exceeds 1")
    gap = ms.identity(f.shape, f.rank) - f.frame_operator
    gap = gap._like([0.5 * (b + b.conj().T) for b in gap.blocks])
    # eigenvalues at rounding level are noise; their square roots would not be
    floor = _GAP_FLOOR * max(1.0, upper)
    gap = ms.operator_function(gap, lambda t: np.where(t > floor, t, 0.0))
    added = tuple(z for z in positive_theta_decomposition(gap) if z.norm() > TAU_PRUNE)
    combined = f.extended(added)
    rep = frames.analyze(combined, tau_frame)
    residual = ms.operator_norm(ms.identity(f.shape, f.rank) - combined.frame_operator)
    return ExtensionResult(added, combined, upper, rep.lower, rep.upper, residual)
