"""JSON documents for frame systems, operators and tail sequences.

Complex numbers are ``[re, im]`` pairs. A frame document looks like::

    {"algebra": {"block_dims": [1, 2]},
     "module_rank": 2,
     "vectors": [[B_1, B_2], ...]}

where ``B_k`` is the flattened ``(m*n_k) x n_k`` block of the vector, written
as a list of rows. Operator documents carry ``out_rank``, ``in_rank`` and
``blocks`` of shape ``(out*n_k) x (in*n_k)`` instead of ``vectors``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .cstar import AlgebraShape
from .errors import ModframeError
from .frames import FrameSystem
from .module_space import ModuleOperator, ModuleVector
from .nonunital_model import TailSequenceElement


class DocumentError(ModframeError, ValueError):
    """Malformed document (bad JSON, missing fields, wrong types, non-finite numbers)."""


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"missing field {key!r}")
    return doc[key]


def _int(value, name) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DocumentError(f"{name} must be a positive integer")
    return value


def _complex_scalar(pair) -> complex:
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in pair)
    ):
        raise DocumentError(f"expected an [re, im] pair, got {pair!r}")
    if not all(math.isfinite(t) for t in pair):
        raise DocumentError("non-finite number")
    return complex(pair[0], pair[1])


def _complex_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DocumentError("a matrix must be a nonempty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DocumentError("ragged matrix")
    return np.array([[_complex_scalar(p) for p in r] for r in rows], dtype=np.complex128).reshape(len(rows), width)


def encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _shape(doc) -> AlgebraShape:
    dims = _field(_field(doc, "algebra"), "block_dims")
    if not isinstance(dims, list) or not dims:
        raise DocumentError("block_dims must be a nonempty list")
    return AlgebraShape([_int(n, "block dimension") for n in dims])


def parse_frame(doc) -> FrameSystem:
    shape = _shape(doc)
    rank = _int(_field(doc, "module_rank"), "module_rank")
    vectors = _field(doc, "vectors")
    if not isinstance(vectors, list):
        raise DocumentError("vectors must be a list")
    out = []
    for v in vectors:
        if not isinstance(v, list):
            raise DocumentError("each vector must be a list of block matrices")
        out.append(ModuleVector(shape, rank, [_complex_matrix(b) for b in v]))
    return FrameSystem(out)


def frame_document(f: FrameSystem) -> dict:
    return {
        "algebra": {"block_dims": list(f.shape.block_dims)},
        "module_rank": f.rank,
        "vectors": [[encode_matrix(b) for b in v.blocks] for v in f.vectors],
    }


def parse_operator(doc) -> ModuleOperator:
    shape = _shape(doc)
    out_rank = _int(_field(doc, "out_rank"), "out_rank")
    in_rank = _int(_field(doc, "in_rank"), "in_rank")
    blocks = _field(doc, "blocks")
    if not isinstance(blocks, list):
        raise DocumentError("blocks must be a list")
    return ModuleOperator(shape, out_rank, in_rank, [_complex_matrix(b) for b in blocks])


def operator_document(t: ModuleOperator) -> dict:
    return {
        "algebra": {"block_dims": list(t.shape.block_dims)},
        "out_rank": t.out_rank,
        "in_rank": t.in_rank,
        "blocks": [encode_matrix(b) for b in t.blocks],
    }


def parse_tail_system(doc) -> list:
    elements = _field(doc, "elements")
    if not isinstance(elements, list):
        raise DocumentError("elements must be a list")
    out = []
    for e in elements:
        prefix = _field(e, "prefix")
        if not isinstance(prefix, list):
            raise DocumentError("prefix must be a list")
        out.append(TailSequenceElement([_complex_scalar(p) for p in prefix], _complex_scalar(_field(e, "tail"))))
    return out


def tail_document(vs) -> dict:
    def pair(z):
        return [float(z.real), float(z.imag)]

    return {"elements": [{"prefix": [pair(z) for z in v.prefix], "tail": pair(v.tail)} for v in vs]}


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from exc


def dumps(obj) -> str:
    # json writes floats with repr, the shortest string that round-trips
    return json.dumps(obj, allow_nan=False)
