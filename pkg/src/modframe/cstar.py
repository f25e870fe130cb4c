"""Finite-dimensional C*-algebras ``A = M_{n_1} + ... + M_{n_K}`` (direct sum).

Elements are tuples of square complex blocks. The order, the norm and the
functional calculus act block by block.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .errors import NotHermitian, NotPositive, ShapeMismatch, SingularElement
from .tolerances import TAU_HERM, TAU_PSD, TAU_RANK


@dataclass(frozen=True)
class AlgebraShape:
    block_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be a nonempty list of positive ints, got {self.block_dims!r}")
        object.__setattr__(self, "block_dims", dims)

    def __iter__(self):
        return iter(self.block_dims)

    def __len__(self):
        return len(self.block_dims)

    @property
    def dimension(self) -> int:
        """Complex dimension of the algebra."""
        return sum(n * n for n in self.block_dims)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class AlgebraElement:
    __slots__ = ("shape", "blocks")

    def __init__(self, shape: AlgebraShape, blocks: Sequence):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        if len(blocks) != len(shape):
            raise ShapeMismatch(f"{len(blocks)} blocks given for shape {shape.block_dims}")
        out = []
        for n, b in zip(shape.block_dims, blocks):
            arr = linalg.as_matrix(b).copy()
            if arr.shape != (n, n):
                raise ShapeMismatch(f"block of shape {arr.shape}, expected {(n, n)}")
            out.append(_frozen(arr))
        self.shape = shape
        self.blocks = tuple(out)

    def __repr__(self):
        return f"AlgebraElement({self.shape.block_dims}, {[b.tolist() for b in self.blocks]})"

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.shape != self.shape:
            raise ShapeMismatch(f"shapes {self.shape.block_dims} and {other.shape.block_dims} differ")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.shape, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.shape, [complex(other) * a for a in self.blocks])
        self._check(other)
        return AlgebraElement(self.shape, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def star(self) -> "AlgebraElement":
        return AlgebraElement(self.shape, [a.conj().T for a in self.blocks])

    def norm(self) -> float:
        return max(linalg.op_norm(a) for a in self.blocks)

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(a))) for a in self.blocks)

    def allclose(self, other: "AlgebraElement", atol: float = 1e-9) -> bool:
        self._check(other)
        return all(np.max(np.abs(a - b)) <= atol for a, b in zip(self.blocks, other.blocks))

    def is_hermitian(self, tau_herm: float = TAU_HERM) -> bool:
        return all(linalg.hermitian_defect(a) <= tau_herm for a in self.blocks)


def unit(shape) -> AlgebraElement:
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    return AlgebraElement(shape, [np.eye(n) for n in shape.block_dims])


def zero(shape) -> AlgebraElement:
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    return AlgebraElement(shape, [np.zeros((n, n)) for n in shape.block_dims])


def scalar(shape, value: complex) -> AlgebraElement:
    return unit(shape) * value


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    return a * b


def alg_star(a: AlgebraElement) -> AlgebraElement:
    return a.star()


def alg_scale(a: AlgebraElement, c: complex) -> AlgebraElement:
    return a * complex(c)


def alg_norm(a: AlgebraElement) -> float:
    return a.norm()


def _require_hermitian(a: AlgebraElement, name: str = "element"):
    if not a.is_hermitian():
        raise NotHermitian(f"{name} is not Hermitian")


def alg_leq(a: AlgebraElement, b: AlgebraElement, tau_psd: float = TAU_PSD) -> bool:
    """``a <= b`` in the C*-order: ``b - a`` is PSD in every block."""
    a._check(b)
    _require_hermitian(a, "left operand")
    _require_hermitian(b, "right operand")
    return all(linalg.psd_check(d, tau_psd).is_psd for d in (b - a).blocks)


def is_positive(a: AlgebraElement, tau_psd: float = TAU_PSD) -> bool:
    _require_hermitian(a)
    return all(linalg.psd_check(d, tau_psd).is_psd for d in a.blocks)


def spectral(a: AlgebraElement, f: Callable[[np.ndarray], np.ndarray]) -> AlgebraElement:
    """Blockwise functional calculus of a Hermitian element."""
    _require_hermitian(a)
    return AlgebraElement(a.shape, [linalg.apply_spectral_function(b, f) for b in a.blocks])


def _spectra(a: AlgebraElement):
    _require_hermitian(a)
    return [linalg.eig_hermitian(b).eigenvalues for b in a.blocks]


def alg_sqrt(a: AlgebraElement, tau_psd: float = TAU_PSD) -> AlgebraElement:
    lam = np.concatenate(_spectra(a))
    norm = float(np.max(np.abs(lam)))
    if lam.min() < -tau_psd * (1.0 + norm):
        raise NotPositive(f"element has eigenvalue {lam.min():.3e} < 0")
    return spectral(a, lambda t: np.sqrt(np.clip(t, 0.0, None)))


def _require_invertible(a: AlgebraElement, tau_rank: float, positive: bool):
    lam = np.concatenate(_spectra(a))
    norm = float(np.max(np.abs(lam)))
    floor = tau_rank * norm
    if positive:
        if lam.min() < -TAU_PSD * (1.0 + norm):
            raise NotPositive(f"element has eigenvalue {lam.min():.3e} < 0")
        if norm == 0.0 or lam.min() <= floor:
            raise SingularElement("element is not invertible")
    elif norm == 0.0 or np.min(np.abs(lam)) <= floor:
        raise SingularElement("element is not invertible")


def alg_inv_sqrt(a: AlgebraElement, tau_rank: float = TAU_RANK) -> AlgebraElement:
    _require_invertible(a, tau_rank, positive=True)
    return spectral(a, lambda t: 1.0 / np.sqrt(t))


def alg_inv(a: AlgebraElement, tau_rank: float = TAU_RANK) -> AlgebraElement:
    """Inverse of an invertible Hermitian element (indefinite allowed)."""
    _require_invertible(a, tau_rank, positive=False)
    return spectral(a, lambda t: 1.0 / t)
