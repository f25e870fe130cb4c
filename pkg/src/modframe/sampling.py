"""Random test objects: elements, vectors, frames, Parseval and tight frames."""

from __future__ import annotations

import numpy as np

from . import module_space as ms
from .cstar import AlgebraElement, AlgebraShape, spectral
from .frames import FrameSystem, analyze, optimal_bounds
from .module_space import ModuleOperator, ModuleVector
from .nonunital_model import TailSequenceElement


def _shape(shape) -> AlgebraShape:
    return shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)


def gaussian(rng: np.random.Generator, *size) -> np.ndarray:
    """Standard complex normal entries."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def random_hermitian(rng, n: int) -> np.ndarray:
    g = gaussian(rng, n, n)
    return 0.5 * (g + g.conj().T)


def random_element(rng, shape) -> AlgebraElement:
    shape = _shape(shape)
    return AlgebraElement(shape, [gaussian(rng, n, n) for n in shape.block_dims])


def random_positive_element(rng, shape) -> AlgebraElement:
    g = random_element(rng, shape)
    return g * g.star()


def random_vector(rng, shape, rank: int) -> ModuleVector:
    shape = _shape(shape)
    return ModuleVector(shape, rank, [gaussian(rng, rank * n, n) for n in shape.block_dims])


def random_operator(rng, shape, out_rank: int, in_rank: int) -> ModuleOperator:
    shape = _shape(shape)
    return ModuleOperator(shape, out_rank, in_rank, [gaussian(rng, out_rank * n, in_rank * n) for n in shape.block_dims])


def random_system(rng, shape, rank: int, count: int) -> FrameSystem:
    return FrameSystem([random_vector(rng, shape, rank) for _ in range(count)])


def random_frame(rng, shape, rank: int, count: int, max_tries: int = 100) -> FrameSystem:
    """Gaussian family, redrawn until it is a frame (needs ``count >= rank``)."""
    if count < rank:
        raise ValueError("a frame of A^m needs at least m vectors")
    for _ in range(max_tries):
        f = random_system(rng, shape, rank, count)
        if analyze(f).is_frame:
            return f
    raise RuntimeError("could not draw a frame")


def orthonormal_columns(m: np.ndarray) -> np.ndarray:
    """Gram-Schmidt on the columns, applied twice for stability."""
    q = np.array(m, dtype=np.complex128)
    for _ in range(2):
        for j in range(q.shape[1]):
            q[:, j] -= q[:, :j] @ (q[:, :j].conj().T @ q[:, j])
            q[:, j] /= np.sqrt(np.real(np.vdot(q[:, j], q[:, j])))
    return q


def random_parseval(rng, shape, rank: int, count: int) -> FrameSystem:
    """Analysis operator with orthonormal flattened columns, i.e. ``U*U = I``."""
    shape = _shape(shape)
    blocks = [orthonormal_columns(gaussian(rng, count * n, rank * n)) for n in shape.block_dims]
    return FrameSystem.from_analysis(ModuleOperator(shape, count, rank, blocks))


def random_tight(rng, shape, rank: int, count: int) -> FrameSystem:
    return random_parseval(rng, shape, rank, count).scaled(float(rng.uniform(0.2, 3.0)))


def random_non_parseval(rng, shape, rank: int, count: int) -> FrameSystem:
    """A frame whose frame operator differs from the identity by a visible margin."""
    while True:
        f = random_frame(rng, shape, rank, count)
        lower, upper = optimal_bounds(f)
        if max(abs(lower - 1.0), abs(upper - 1.0)) > 1e-3:
            return f


def random_bessel_unit(rng, shape, rank: int, count: int) -> FrameSystem:
    """Random family rescaled to optimal Bessel bound ``B <= 1``."""
    f = random_system(rng, shape, rank, count)
    upper = optimal_bounds(f)[1]
    if upper == 0.0:
        return f
    # sometimes exactly on the boundary B = 1
    target = 1.0 if rng.random() < 0.3 else float(rng.uniform(0.05, 1.0))
    return f.scaled(np.sqrt(target / upper))


def random_dominated_pair(rng, shape, rank: int):
    """``(x, a)`` with ``0 <= a <= <x, x>``: ``a = c^(1/2) k c^(1/2)`` with ``0 <= k <= e``."""
    shape = _shape(shape)
    x = random_vector(rng, shape, rank)
    c = ms.inner_product(x, x)
    c = AlgebraElement(shape, [0.5 * (b + b.conj().T) for b in c.blocks])
    root = spectral(c, lambda t: np.sqrt(np.clip(t, 0.0, None)))
    h = random_positive_element(rng, shape)
    k = h * (float(rng.uniform(0.0, 1.0)) / h.norm())
    a = root * k * root
    return x, AlgebraElement(shape, [0.5 * (b + b.conj().T) for b in a.blocks])


def random_tail_element(rng, max_prefix: int = 4, outer_prob: float = 0.5) -> TailSequenceElement:
    length = int(rng.integers(0, max_prefix + 1))
    prefix = gaussian(rng, length)
    # sparse zeros make the lower bound vanish often enough to matter
    prefix[rng.random(length) < 0.2] = 0.0
    tail = complex(gaussian(rng, 1)[0]) if rng.random() < outer_prob else 0.0
    return TailSequenceElement(prefix, tail)


def random_tail_system(rng, max_count: int = 4) -> list:
    return [random_tail_element(rng) for _ in range(int(rng.integers(1, max_count + 1)))]
