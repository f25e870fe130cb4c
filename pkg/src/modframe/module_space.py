"""The Hilbert module ``A^m`` and adjointable maps ``A^m -> A^N``.

An operator ``A^m -> A^N`` is an ``N x m`` matrix over ``A`` acting by left
multiplication. Storage is the flattened form: for algebra block ``k`` of size
``n``, a complex ``(N*n) x (m*n)`` array whose ``n x n`` tile ``(p, q)`` is
block ``k`` of entry ``(p, q)``. Under this identification ``M_N(A)``-style
products, adjoints, spectra and norms are ordinary complex matrix algebra,
block by block.

A vector of ``A^m`` is kept the same way as a one-column operator: an
``(m*n) x n`` array per block.
"""

from __future__ import annotations

from numbers import Number
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .cstar import AlgebraElement, AlgebraShape
from .errors import DimensionError, NonSquare, NotHermitian, ShapeMismatch, SingularElement
from .tolerances import TAU_HERM, TAU_PSD, TAU_RANK


def _shape(shape) -> AlgebraShape:
    return shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


class ModuleOperator:
    """Adjointable operator ``A^in_rank -> A^out_rank``."""

    __slots__ = ("shape", "out_rank", "in_rank", "blocks")

    def __init__(self, shape, out_rank: int, in_rank: int, blocks: Sequence):
        shape = _shape(shape)
        if len(blocks) != len(shape):
            raise DimensionError(f"{len(blocks)} flattened blocks for {len(shape)} algebra blocks")
        out = []
        for n, b in zip(shape.block_dims, blocks):
            b = np.asarray(b, dtype=np.complex128)
            if b.ndim != 2 or b.shape != (out_rank * n, in_rank * n):
                raise DimensionError(
                    f"flattened block of shape {b.shape}, expected {(out_rank * n, in_rank * n)}"
                )
            out.append(_frozen(b))
        self.shape = shape
        self.out_rank = int(out_rank)
        self.in_rank = int(in_rank)
        self.blocks = tuple(out)

    def __repr__(self):
        return f"ModuleOperator(shape={self.shape.block_dims}, {self.out_rank}x{self.in_rank})"

    @classmethod
    def from_entries(cls, grid: Sequence[Sequence[AlgebraElement]]) -> "ModuleOperator":
        rows = len(grid)
        if rows == 0 or len(grid[0]) == 0:
            raise DimensionError("operator grid must be nonempty")
        cols = len(grid[0])
        shape = grid[0][0].shape
        for row in grid:
            if len(row) != cols:
                raise DimensionError("ragged operator grid")
            for a in row:
                if a.shape != shape:
                    raise ShapeMismatch("entries over different algebras")
        blocks = []
        for k, n in enumerate(shape.block_dims):
            blocks.append(np.block([[grid[p][q].blocks[k] for q in range(cols)] for p in range(rows)]))
        return cls(shape, rows, cols, blocks)

    def entry(self, p: int, q: int) -> AlgebraElement:
        return AlgebraElement(
            self.shape,
            [b[p * n:(p + 1) * n, q * n:(q + 1) * n] for n, b in zip(self.shape.block_dims, self.blocks)],
        )

    def entries(self):
        return [[self.entry(p, q) for q in range(self.in_rank)] for p in range(self.out_rank)]

    def _check_same(self, other):
        if not isinstance(other, ModuleOperator):
            raise TypeError(f"expected ModuleOperator, got {type(other).__name__}")
        if other.shape != self.shape or (other.out_rank, other.in_rank) != (self.out_rank, self.in_rank):
            raise ShapeMismatch(f"{self!r} and {other!r} are not compatible")

    def _like(self, blocks, out_rank=None, in_rank=None):
        return ModuleOperator(
            self.shape,
            self.out_rank if out_rank is None else out_rank,
            self.in_rank if in_rank is None else in_rank,
            blocks,
        )

    def __add__(self, other):
        self._check_same(other)
        return self._like([a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check_same(other)
        return self._like([a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return self._like([-a for a in self.blocks])

    def __mul__(self, c):
        if isinstance(c, Number):
            return self._like([complex(c) * a for a in self.blocks])
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, ModuleVector):
            return apply(self, other)
        return compose(self, other)

    @property
    def H(self) -> "ModuleOperator":
        return adjoint(self)

    @property
    def is_square(self) -> bool:
        return self.out_rank == self.in_rank

    def max_abs_diff(self, other: "ModuleOperator") -> float:
        self._check_same(other)
        return max(float(np.max(np.abs(a - b))) if a.size else 0.0 for a, b in zip(self.blocks, other.blocks))


class ModuleVector:
    """Element of ``A^m``."""

    __slots__ = ("shape", "rank", "blocks")

    def __init__(self, shape, rank: int, blocks: Sequence):
        shape = _shape(shape)
        if len(blocks) != len(shape):
            raise DimensionError(f"{len(blocks)} flattened blocks for {len(shape)} algebra blocks")
        out = []
        for n, b in zip(shape.block_dims, blocks):
            b = np.asarray(b, dtype=np.complex128)
            if b.shape != (rank * n, n):
                raise DimensionError(f"vector block of shape {b.shape}, expected {(rank * n, n)}")
            out.append(_frozen(b))
        self.shape = shape
        self.rank = int(rank)
        self.blocks = tuple(out)

    def __repr__(self):
        return f"ModuleVector(shape={self.shape.block_dims}, rank={self.rank})"

    @classmethod
    def from_components(cls, components: Sequence[AlgebraElement]) -> "ModuleVector":
        if not components:
            raise DimensionError("a module vector needs at least one component")
        shape = components[0].shape
        if any(c.shape != shape for c in components):
            raise ShapeMismatch("components over different algebras")
        blocks = [np.vstack([c.blocks[k] for c in components]) for k in range(len(shape))]
        return cls(shape, len(components), blocks)

    @property
    def components(self):
        dims = self.shape.block_dims
        return [
            AlgebraElement(self.shape, [b[i * n:(i + 1) * n, :] for n, b in zip(dims, self.blocks)])
            for i in range(self.rank)
        ]

    def _check_same(self, other):
        if not isinstance(other, ModuleVector):
            raise TypeError(f"expected ModuleVector, got {type(other).__name__}")
        if other.shape != self.shape or other.rank != self.rank:
            raise ShapeMismatch(f"{self!r} and {other!r} are not compatible")

    def __add__(self, other):
        self._check_same(other)
        return ModuleVector(self.shape, self.rank, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check_same(other)
        return ModuleVector(self.shape, self.rank, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return ModuleVector(self.shape, self.rank, [-a for a in self.blocks])

    def __mul__(self, c):
        """Right action: ``x * a`` for an algebra element ``a``, or complex scaling."""
        if isinstance(c, Number):
            return ModuleVector(self.shape, self.rank, [complex(c) * b for b in self.blocks])
        if isinstance(c, AlgebraElement):
            if c.shape != self.shape:
                raise ShapeMismatch("right action by an element of another algebra")
            return ModuleVector(self.shape, self.rank, [b @ a for b, a in zip(self.blocks, c.blocks)])
        return NotImplemented

    def __rmul__(self, c):
        if isinstance(c, Number):
            return self * c
        return NotImplemented

    def as_operator(self) -> ModuleOperator:
        return ModuleOperator(self.shape, self.rank, 1, self.blocks)

    @classmethod
    def from_operator(cls, t: ModuleOperator) -> "ModuleVector":
        if t.in_rank != 1:
            raise DimensionError("only one-column operators are vectors")
        return cls(t.shape, t.out_rank, t.blocks)

    def norm(self) -> float:
        """Module norm ``|<x, x>|^(1/2)``."""
        return module_norm(self)

    def max_abs_diff(self, other: "ModuleVector") -> float:
        self._check_same(other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.blocks, other.blocks))


def zero_vector(shape, rank: int) -> ModuleVector:
    shape = _shape(shape)
    return ModuleVector(shape, rank, [np.zeros((rank * n, n)) for n in shape.block_dims])


def basis_vector(shape, rank: int, q: int) -> ModuleVector:
    """``e^(q)``: the unit in coordinate ``q``, zero elsewhere."""
    shape = _shape(shape)
    blocks = []
    for n in shape.block_dims:
        b = np.zeros((rank * n, n), dtype=np.complex128)
        b[q * n:(q + 1) * n, :] = np.eye(n)
        blocks.append(b)
    return ModuleVector(shape, rank, blocks)


def identity(shape, rank: int) -> ModuleOperator:
    shape = _shape(shape)
    return ModuleOperator(shape, rank, rank, [np.eye(rank * n) for n in shape.block_dims])


def zero_operator(shape, out_rank: int, in_rank: int) -> ModuleOperator:
    shape = _shape(shape)
    return ModuleOperator(
        shape, out_rank, in_rank, [np.zeros((out_rank * n, in_rank * n)) for n in shape.block_dims]
    )


def inner_product(x: ModuleVector, y: ModuleVector) -> AlgebraElement:
    """``<x, y> = sum_i x_i* y_i``."""
    x._check_same(y)
    return AlgebraElement(x.shape, [a.conj().T @ b for a, b in zip(x.blocks, y.blocks)])


def module_norm(x: ModuleVector) -> float:
    return max(linalg.op_norm(b) for b in x.blocks)


def apply(t: ModuleOperator, x: ModuleVector) -> ModuleVector:
    if t.shape != x.shape or t.in_rank != x.rank:
        raise ShapeMismatch(f"cannot apply {t!r} to {x!r}")
    return ModuleVector(t.shape, t.out_rank, [a @ b for a, b in zip(t.blocks, x.blocks)])


def adjoint(t: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(t.shape, t.in_rank, t.out_rank, [b.conj().T for b in t.blocks])


def compose(s: ModuleOperator, t: ModuleOperator) -> ModuleOperator:
    """``s o t`` (apply ``t`` first)."""
    if s.shape != t.shape or s.in_rank != t.out_rank:
        raise ShapeMismatch(f"cannot compose {s!r} with {t!r}")
    return ModuleOperator(s.shape, s.out_rank, t.in_rank, [a @ b for a, b in zip(s.blocks, t.blocks)])


def theta(y: ModuleVector, x: ModuleVector) -> ModuleOperator:
    """Rank-one operator ``z -> y <x, z>``."""
    if y.shape != x.shape:
        raise ShapeMismatch("theta of vectors over different algebras")
    return ModuleOperator(y.shape, y.rank, x.rank, [a @ b.conj().T for a, b in zip(y.blocks, x.blocks)])


def operator_from_columns(columns: Sequence[ModuleVector]) -> ModuleOperator:
    """The map ``A^N -> A^m`` sending ``e^(n)`` to ``columns[n]``."""
    if not columns:
        raise DimensionError("need at least one column")
    shape, rank = columns[0].shape, columns[0].rank
    for c in columns:
        if c.shape != shape or c.rank != rank:
            raise ShapeMismatch("columns of different shapes")
    return ModuleOperator(shape, rank, len(columns), [np.hstack([c.blocks[k] for c in columns]) for k in range(len(shape))])


def column(t: ModuleOperator, n: int) -> ModuleVector:
    """``t e^(n)`` as a vector."""
    return ModuleVector(
        t.shape, t.out_rank, [b[:, n * d:(n + 1) * d] for d, b in zip(t.shape.block_dims, t.blocks)]
    )


def flatten(t: ModuleOperator) -> list:
    """The complex blocks of ``t`` (copies), one per algebra block."""
    return [np.array(b) for b in t.blocks]


def unflatten(blocks: Sequence, shape, out_rank: int, in_rank: int) -> ModuleOperator:
    shape = _shape(shape)
    if len(blocks) != len(shape):
        raise DimensionError(f"{len(blocks)} blocks for shape {shape.block_dims}")
    for n, b in zip(shape.block_dims, blocks):
        r, c = np.shape(b)
        if r % n or c % n:
            raise DimensionError(f"block of shape {(r, c)} is not divisible by block dimension {n}")
        if (r // n, c // n) != (out_rank, in_rank):
            raise DimensionError(f"block of shape {(r, c)} does not match ranks {(out_rank, in_rank)}")
    return ModuleOperator(shape, out_rank, in_rank, blocks)


def operator_norm(t: ModuleOperator) -> float:
    return max(linalg.op_norm(b) for b in t.blocks)


def _require_square(t: ModuleOperator):
    if not t.is_square:
        raise NonSquare(f"{t!r} is not square")


def is_hermitian_operator(t: ModuleOperator, tau_herm: float = TAU_HERM) -> bool:
    return t.is_square and all(linalg.hermitian_defect(b) <= tau_herm for b in t.blocks)


def spectra(t: ModuleOperator) -> list:
    """Ascending eigenvalues of each flattened block of a Hermitian operator."""
    _require_square(t)
    if not is_hermitian_operator(t):
        raise NotHermitian(f"{t!r} is not Hermitian")
    return [linalg.eig_hermitian(b).eigenvalues for b in t.blocks]


def min_eigenvalue(t: ModuleOperator) -> float:
    return min(float(lam[0]) for lam in spectra(t))


def is_positive_operator(t: ModuleOperator, tau_psd: float = TAU_PSD) -> bool:
    _require_square(t)
    if not is_hermitian_operator(t):
        raise NotHermitian(f"{t!r} is not Hermitian")
    return all(linalg.psd_check(b, tau_psd).is_psd for b in t.blocks)


def is_invertible(t: ModuleOperator, tau_rank: float = TAU_RANK) -> bool:
    """Square, with ``sigma_min > tau_rank * sigma_max`` in every block."""
    if not t.is_square:
        return False
    for b in t.blocks:
        s = linalg.singular_values(b)
        if s[0] == 0.0 or s[-1] <= tau_rank * s[0]:
            return False
    return True


def block_ranks(t: ModuleOperator, tau_rank: float = TAU_RANK) -> list:
    return [linalg.numerical_rank(b, tau_rank) for b in t.blocks]


def operator_function(t: ModuleOperator, f: Callable[[np.ndarray], np.ndarray]) -> ModuleOperator:
    """Functional calculus of a Hermitian operator, block by block."""
    _require_square(t)
    if not is_hermitian_operator(t):
        raise NotHermitian(f"{t!r} is not Hermitian")
    return t._like([linalg.apply_spectral_function(b, f) for b in t.blocks])


def inverse(t: ModuleOperator) -> ModuleOperator:
    """Inverse of an invertible square operator, via ``(T*T)^(-1) T*``."""
    if not is_invertible(t):
        raise SingularElement(f"{t!r} is not invertible")
    gram = compose(adjoint(t), t)
    gram = gram._like([0.5 * (b + b.conj().T) for b in gram.blocks])
    return compose(operator_function(gram, lambda s: 1.0 / s), adjoint(t))
