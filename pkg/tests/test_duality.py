import numpy as np
import pytest

from modframe import duality, frames, sampling
from modframe import module_space as ms
from modframe.duality import DualPair
from modframe.errors import InsufficientCorank, LowerBoundBelowOne, NotAFrame, NotDual, ShapeMismatch

from conftest import SCALAR, sframe, sop, svec

SHAPES = [[1], [2], [1, 2], [3]]


def test_is_dual_examples(rng):
    p = sampling.random_parseval(rng, [1, 2], 2, 3)
    chk = duality.is_dual(p, p)
    assert chk.ok and chk.residual <= 1e-12
    assert duality.is_dual(sframe(1, 2), sframe(0.2, 0.4)).ok
    chk = duality.is_dual(sframe(1, 2), sframe(1, 2))
    assert not chk.ok and chk.residual == pytest.approx(4.0)


def test_is_dual_symmetric(rng):
    f = sampling.random_frame(rng, [2], 2, 4)
    g = duality.dual_from_parameter(f, sampling.random_operator(rng, [2], 4, 2))
    assert duality.is_dual(f, g).ok and duality.is_dual(g, f).ok
    h = sampling.random_frame(rng, [2], 2, 4)
    assert duality.is_dual(f, h).ok == duality.is_dual(h, f).ok


def test_is_dual_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        duality.is_dual(sframe(1, 2), sframe(1))


def test_parameter_examples():
    f = sframe(1, 2)
    canon = frames.canonical_dual(f)
    zero_l = sop(np.zeros((2, 1)))
    g = duality.dual_from_parameter(f, zero_l)
    assert all(a.max_abs_diff(b) <= 1e-15 for a, b in zip(g, canon))
    g = duality.dual_from_parameter(f, f.analysis)
    assert all(a.max_abs_diff(b) <= 1e-12 for a, b in zip(g, canon))
    f = sframe(1, 1)
    g = duality.dual_from_parameter(f, sop([[1], [-1]]))
    v = [x.blocks[0][0, 0] for x in g]
    c = v[0] - 0.5
    assert v[1] == pytest.approx(0.5 - c) and abs(c) > 0.1
    assert duality.is_dual(f, g).ok


def test_parameter_needs_frame():
    with pytest.raises(NotAFrame):
        duality.dual_from_parameter(sframe((1, 0)), sop([[0, 0]]))


def test_oblique_examples(rng):
    f = sampling.random_frame(rng, [1, 2], 2, 4)
    canon = duality.dual_pair(f, frames.canonical_dual(f))
    rep = duality.oblique_structure(canon)
    expected = ms.compose(ms.compose(f.analysis, frames.inverse_frame_operator(f)), ms.adjoint(f.analysis))
    assert rep.projection.max_abs_diff(expected) <= 1e-12 and rep.is_orthogonal
    other = duality.dual_from_parameter(f, sampling.random_operator(rng, [1, 2], 4, 2))
    rep = duality.oblique_structure(duality.dual_pair(f, other))
    assert rep.idempotency_residual <= 1e-9 and not rep.is_orthogonal
    sq = sampling.random_frame(rng, [1, 2], 2, 2)
    rep = duality.oblique_structure(duality.dual_pair(sq, frames.canonical_dual(sq)))
    assert rep.projection.max_abs_diff(ms.identity([1, 2], 2)) <= 1e-9


def test_oblique_rejects_non_dual():
    f = sframe(1, 2)
    with pytest.raises(NotDual):
        duality.oblique_structure(DualPair(f, f, 0.0))
    with pytest.raises(NotDual):
        duality.dual_pair(f, f)


def test_minimality_examples(rng):
    f = sampling.random_frame(rng, [2], 1, 3)
    canon = duality.dual_pair(f, frames.canonical_dual(f))
    assert duality.minimality_check(canon)
    assert abs(duality.minimality_margin(canon)) <= 1e-10
    g = duality.dual_from_parameter(f, sampling.random_operator(rng, [2], 3, 1))
    pair = duality.dual_pair(f, g)
    assert duality.minimality_check(pair)
    # V*V - S^-1 = L* P L is PSD and nonzero
    gap = ms.compose(ms.adjoint(g.analysis), g.analysis) - frames.inverse_frame_operator(f)
    assert ms.operator_norm(gap) > 1e-6
    with pytest.raises(NotDual):
        duality.minimality_check(DualPair(f, f, 0.0))


def test_parseval_dual_of_parseval(rng):
    p = sampling.random_parseval(rng, [1, 2], 2, 4)
    d = duality.parseval_dual(p)
    assert frames.analyze(d).is_parseval and duality.is_dual(p, d).ok


def test_parseval_dual_scalar_pair():
    f = sframe(1, 1)
    d = duality.parseval_dual(f)
    v = d.analysis
    assert ms.compose(ms.adjoint(v), v).max_abs_diff(sop([[1]])) <= 1e-9
    assert duality.is_dual(f, d).ok


def test_parseval_dual_failures():
    with pytest.raises(InsufficientCorank) as exc:
        duality.parseval_dual(sframe(np.sqrt(2)))
    assert exc.value.reason == "corank"
    with pytest.raises(LowerBoundBelowOne) as exc:
        duality.parseval_dual(sframe(0.5, 0.5))
    assert exc.value.reason == "lower_bound"


@pytest.mark.parametrize("shape", SHAPES)
def test_parseval_dual_random(rng, shape):
    built = 0
    for _ in range(20):
        m = int(rng.integers(1, 3))
        f = sampling.random_frame(rng, shape, m, m + int(rng.integers(0, 4))).scaled(2.0)
        try:
            cert = duality.parseval_dual_certificate(f)
        except (InsufficientCorank, LowerBoundBelowOne):
            continue
        d = duality.parseval_dual(f)
        v = d.analysis
        assert ms.compose(ms.adjoint(v), v).max_abs_diff(ms.identity(shape, m)) <= 1e-9
        assert duality.is_dual(f, d).residual <= 1e-9
        # certificate: S - I = T* P T
        p = duality.range_complement_projection(f)
        t = cert.witness
        tpt = ms.compose(ms.compose(ms.adjoint(t), p), t)
        assert tpt.max_abs_diff(f.frame_operator - ms.identity(shape, m)) <= 1e-9
        built += 1
    assert built > 0


def test_unique_dual_examples():
    assert duality.has_unique_dual(frames.frame_from_surjection(ms.identity([1, 2], 3)))
    assert not duality.has_unique_dual(sframe(1, 1))
    assert not duality.has_unique_dual(sframe((1, 0), (0, 1), (1, 1)))


def test_unique_dual_consequences(rng):
    for shape in SHAPES:
        f = sampling.random_frame(rng, shape, 3, 3)
        rep = duality.unique_dual_report(f)
        assert rep.unique
        assert rep.orthonormality_residual <= 1e-9 and rep.unitary_residual <= 1e-9
        assert rep.gram_invertible
        assert not duality.unique_dual_report(sampling.random_frame(rng, shape, 2, 3)).unique


def test_pseudodual_examples(rng):
    f = sampling.random_frame(rng, [2], 2, 3)
    d = frames.canonical_dual(f)
    res = duality.pseudodual_check(f, d)
    assert res.ok and all(a.max_abs_diff(b) <= 1e-9 for a, b in zip(res.corrected_dual, d))
    res = duality.pseudodual_check(sframe(1, 1), sframe(1, 1))
    assert res.ok
    assert np.allclose([x.blocks[0][0, 0] for x in res.corrected_dual], [0.5, 0.5])
    assert not duality.pseudodual_check(sframe(1, -1), sframe(1, 1)).ok


def test_pseudodual_random(rng):
    for shape in SHAPES:
        f = sampling.random_frame(rng, shape, 2, 4)
        g = sampling.random_frame(rng, shape, 2, 4)
        res = duality.pseudodual_check(f, g)
        if res.ok:
            assert duality.is_dual(f, res.corrected_dual).ok


# properties

@pytest.mark.parametrize("shape", SHAPES)
def test_parametrization_properties(rng, shape):
    for _ in range(5):
        m = int(rng.integers(1, 3))
        n = m + int(rng.integers(1, 3))
        f = sampling.random_frame(rng, shape, m, n)
        s_inv = frames.inverse_frame_operator(f)
        canon_v = ms.compose(f.analysis, s_inv)
        for _ in range(5):
            g = duality.dual_from_parameter(f, sampling.random_operator(rng, shape, n, m))
            pair = duality.dual_pair(f, g)
            # completeness: L = V gives V back
            again = duality.dual_from_parameter(f, g.analysis)
            assert again.analysis.max_abs_diff(g.analysis) <= 1e-9
            rep = duality.oblique_structure(pair)
            assert max(rep.idempotency_residual, rep.range_residual, rep.corange_residual) <= 1e-9
            assert duality.dual_from_projection(f, rep.projection).max_abs_diff(g.analysis) <= 1e-9
            is_canon = ms.operator_norm(g.analysis - canon_v) <= 1e-9
            assert rep.is_orthogonal == is_canon
            assert duality.minimality_check(pair)
