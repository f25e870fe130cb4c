import numpy as np
import pytest

from modframe.cstar import AlgebraElement, AlgebraShape
from modframe.frames import FrameSystem
from modframe.module_space import ModuleOperator, ModuleVector

SCALAR = AlgebraShape([1])


def svec(*coords) -> ModuleVector:
    """Vector of C^m (algebra C) from its coordinates."""
    return ModuleVector(SCALAR, len(coords), [np.array(coords, dtype=complex).reshape(-1, 1)])


def sframe(*vectors) -> FrameSystem:
    """Frame system over C from tuples (or scalars for m = 1)."""
    return FrameSystem([svec(*v) if isinstance(v, tuple) else svec(v) for v in vectors])


def sop(rows) -> ModuleOperator:
    """Operator over C from a complex matrix."""
    m = np.array(rows, dtype=complex)
    return ModuleOperator(SCALAR, m.shape[0], m.shape[1], [m])


def elem(*blocks) -> AlgebraElement:
    blocks = [np.atleast_2d(np.array(b, dtype=complex)) for b in blocks]
    return AlgebraElement(AlgebraShape([b.shape[0] for b in blocks]), blocks)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
