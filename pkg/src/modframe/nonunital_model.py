"""A commutative non-unital model where outer frames exist.

``A`` is the algebra of eventually-zero complex sequences and its multiplier
algebra ``M(A)`` consists of the eventually-constant ones. Both are stored as a
finite prefix plus a constant tail; ``A`` is the subset with tail ``0``. The
module is ``X = A`` over itself, with ``<x, y> = conj(x) y`` pointwise.

Because everything is eventually constant, the frame inequalities at every
coordinate reduce to finitely many checks: the prefix positions and the tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BesselBoundExceedsOne, EmptySystem
from .tolerances import TAU_FRAME


class TailSequenceElement:
    """``(prefix[0], ..., prefix[p-1], tail, tail, ...)`` in canonical form."""

    __slots__ = ("prefix", "tail")

    def __init__(self, prefix: Sequence[complex] = (), tail: complex = 0.0):
        pre = [complex(z) for z in prefix]
        tail = complex(tail)
        if not all(np.isfinite(z) for z in pre) or not np.isfinite(tail):
            raise ValueError("sequence entries must be finite")
        while pre and pre[-1] == tail:
            pre.pop()
        self.prefix = tuple(pre)
        self.tail = tail

    def __repr__(self):
        return f"TailSequenceElement(prefix={list(self.prefix)}, tail={self.tail})"

    def __eq__(self, other):
        if not isinstance(other, TailSequenceElement):
            return NotImplemented
        return self.prefix == other.prefix and self.tail == other.tail

    def __hash__(self):
        return hash((self.prefix, self.tail))

    def __getitem__(self, k: int) -> complex:
        return self.prefix[k] if k < len(self.prefix) else self.tail

    def values(self, length: int) -> np.ndarray:
        """First ``length`` coordinates followed by the tail."""
        return np.array([self[k] for k in range(length)] + [self.tail], dtype=np.complex128)

    @property
    def in_ideal(self) -> bool:
        """Membership in ``A`` (as opposed to ``M(A)``)."""
        return self.tail == 0

    def norm(self) -> float:
        return max([abs(z) for z in self.prefix] + [abs(self.tail)])


def unit() -> TailSequenceElement:
    return TailSequenceElement((), 1.0)


def zero() -> TailSequenceElement:
    return TailSequenceElement((), 0.0)


def _pointwise(f, *us: TailSequenceElement) -> TailSequenceElement:
    length = max(len(u.prefix) for u in us)
    return TailSequenceElement([f(*(u[k] for u in us)) for k in range(length)], f(*(u.tail for u in us)))


def seq_mul(u: TailSequenceElement, v: TailSequenceElement) -> TailSequenceElement:
    return _pointwise(lambda a, b: a * b, u, v)


def seq_add(u: TailSequenceElement, v: TailSequenceElement) -> TailSequenceElement:
    return _pointwise(lambda a, b: a + b, u, v)


def seq_star(u: TailSequenceElement) -> TailSequenceElement:
    return _pointwise(lambda a: a.conjugate(), u)


def seq_scale(u: TailSequenceElement, c: complex) -> TailSequenceElement:
    return _pointwise(lambda a: c * a, u)


def inner(x: TailSequenceElement, y: TailSequenceElement) -> TailSequenceElement:
    return seq_mul(seq_star(x), y)


def _grid(vs: Sequence[TailSequenceElement]) -> np.ndarray:
    """``N x (L + 1)`` table: coordinates ``0..L-1`` and the tail in the last column."""
    length = max(len(v.prefix) for v in vs)
    return np.array([v.values(length) for v in vs])


def coordinate_sums(vs: Sequence[TailSequenceElement]) -> np.ndarray:
    """``s(k) = sum_n |v_n(k)|^2`` at each prefix position, then ``s_inf``."""
    g = _grid(vs)
    return np.sum(np.abs(g) ** 2, axis=0)


KINDS = ("frame", "outer_frame", "outer_bessel_only", "not_bessel_irrelevant", "not_frame")


@dataclass(frozen=True)
class OuterFrameVerdict:
    kind: str
    lower: float
    upper: float
    strict_check: bool

    @property
    def is_parseval(self) -> bool:
        return self.lower == 1.0 and self.upper == 1.0

    def as_dict(self) -> dict:
        return {"kind": self.kind, "A": self.lower, "B": self.upper, "strict_check": self.strict_check}


def _strict_lower(vs: Sequence[TailSequenceElement]) -> float:
    # independent route: form sum_n v_n* v_n in M(A) with the algebra operations,
    # then test against every multiplier coordinate including the constant tail
    total = zero()
    for v in vs:
        total = seq_add(total, inner(v, v))
    return min([z.real for z in total.prefix] + [total.tail.real])


def classify_finite_system(vs: Sequence[TailSequenceElement]) -> OuterFrameVerdict:
    """Optimal bounds of a finite family in ``M(X)`` and its frame type.

    Finite families are always Bessel, so ``not_bessel_irrelevant`` never
    occurs; ``frame`` does not occur either, since members of ``A`` have
    vanishing tails and hence ``A = 0``.
    """
    vs = list(vs)
    if not vs:
        raise EmptySystem("classify needs at least one element")
    s = coordinate_sums(vs)
    lower, upper = float(s.min()), float(s.max())
    outer = any(not v.in_ideal for v in vs)
    if lower > 0.0:
        kind = "outer_frame" if outer else "frame"
    else:
        kind = "outer_bessel_only" if outer else "not_frame"
    return OuterFrameVerdict(kind, lower, upper, _strict_lower(vs) > 0.0)


def outer_parseval_complete(vs: Sequence[TailSequenceElement]) -> list:
    """Append ``w`` with ``|w(k)|^2 = 1 - s(k)``; zero ``w`` is not appended."""
    vs = list(vs)
    if not vs:
        raise EmptySystem("completion needs at least one element")
    s = coordinate_sums(vs)
    if s.max() > 1.0 + TAU_FRAME:
        raise BesselBoundExceedsOne(f"Bessel bound {s.max():.6g} exceeds 1")
    w_vals = np.sqrt(np.clip(1.0 - s, 0.0, None))
    w = TailSequenceElement(w_vals[:-1], w_vals[-1])
    if w == zero():
        return vs
    return vs + [w]


@dataclass(frozen=True)
class UniqueDualReport:
    is_frame: bool
    unique: bool
    corank: int
    canonical_dual: Optional[list]
    other_dual: Optional[list]  # a second dual when the dual is not unique


def _dual_residual(vs, ws) -> float:
    # sum_n w_n conj(v_n) = 1 at every coordinate
    length = max(len(u.prefix) for u in list(vs) + list(ws))
    g_v = np.array([v.values(length) for v in vs])
    g_w = np.array([w.values(length) for w in ws])
    return float(np.max(np.abs(np.sum(g_w * g_v.conj(), axis=0) - 1.0)))


def is_dual(vs, ws, atol: float = 1e-9) -> bool:
    return len(vs) == len(ws) and _dual_residual(vs, ws) <= atol


def unique_dual_witness(vs: Optional[Sequence[TailSequenceElement]] = None) -> UniqueDualReport:
    """Dual frames of a finite outer system, by the coordinatewise dual parametrisation.

    With ``g_k = (v_n(k))_n`` the duals at coordinate ``k`` are
    ``g_k / s(k) + (I - g_k g_k* / s(k)) l_k``. The correction
    vanishes exactly when the projection has rank ``0``, i.e. ``N = 1``.
    """
    vs = [unit()] if vs is None else list(vs)
    if not vs:
        raise EmptySystem("system needs at least one element")
    verdict = classify_finite_system(vs)
    if verdict.lower <= 0.0:
        return UniqueDualReport(False, False, 0, None, None)
    g = _grid(vs)  # N x (L + 1)
    s = np.sum(np.abs(g) ** 2, axis=0)
    canon = g / s
    n_vec = g.shape[0]
    corank = n_vec - 1
    canonical = [TailSequenceElement(row[:-1], row[-1]) for row in canon]
    if corank == 0:
        return UniqueDualReport(True, True, 0, canonical, None)
    # l_k = first standard basis vector at every coordinate; w = canon + P l
    other = canon.copy()
    for k in range(g.shape[1]):
        p = np.eye(n_vec) - np.outer(g[:, k], g[:, k].conj()) / s[k]
        col = int(np.argmax(np.sum(np.abs(p) ** 2, axis=0)))
        other[:, k] += p[:, col]
    others = [TailSequenceElement(row[:-1], row[-1]) for row in other]
    return UniqueDualReport(True, False, corank, canonical, others)
