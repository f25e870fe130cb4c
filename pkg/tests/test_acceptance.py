"""Acceptance suite: thirteen criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``. Every criterion draws from its own seeded
generator so results are reproducible and independent of test order.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modframe import approximation, duality, extension, frames, linalg, sampling  # noqa: E402
from modframe import module_space as ms  # noqa: E402
from modframe import nonunital_model as nu  # noqa: E402
from modframe.errors import BesselBoundExceedsOne, ExistenceFailure, InsufficientCorank  # noqa: E402

from conftest import sframe  # noqa: E402
from test_linalg import cholesky_succeeds  # noqa: E402

SHAPES = ([1], [2], [1, 2], [3])


def _report(number: int, title: str, passed: bool, detail: str):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title} -- {detail}"
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return line


def _frames(seed: int, count: int = 100):
    """``count`` random frames cycling through the shapes, rank 1..3, N = m..m+3."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        m = int(rng.integers(1, 4))
        out.append(sampling.random_frame(rng, SHAPES[i % len(SHAPES)], m, m + int(rng.integers(0, 4))))
    return out


def criterion_1():
    rng = np.random.default_rng(101)
    worst = 0.0
    for f in _frames(1):
        d = frames.canonical_dual(f)
        xs = [ms.basis_vector(f.shape, f.rank, q) for q in range(f.rank)]
        xs += [sampling.random_vector(rng, f.shape, f.rank) for _ in range(5)]
        worst = max(worst, max(ms.module_norm(frames.reconstruct(f, d, x) - x) for x in xs))
    return worst <= 1e-9, f"max reconstruction error {worst:.2e} (tol 1e-9)"


def criterion_2():
    worst = 0.0
    for f in _frames(1):
        lo, hi = frames.optimal_bounds(f)
        lo2, hi2 = frames.bounds_from_norms(f)
        worst = max(worst, abs(lo - lo2), abs(hi - hi2))
    return worst <= 1e-9, f"max bound disagreement {worst:.2e} (tol 1e-9)"


def criterion_3():
    rng = np.random.default_rng(3)
    bad = 0
    for i in range(50):
        shape = SHAPES[i % len(SHAPES)]
        m = int(rng.integers(1, 4))
        n = m + int(rng.integers(0, 4))
        p = sampling.random_parseval(rng, shape, m, n)
        q = sampling.random_non_parseval(rng, shape, m, n)
        bad += not (frames.is_parseval_by_theta(p, 1e-10) and frames.analyze(p).is_parseval)
        bad += frames.is_parseval_by_theta(q, 1e-10) or frames.analyze(q).is_parseval
    return bad == 0, f"{bad} misclassified of 100 systems"


def _parametrized_duals():
    rng = np.random.default_rng(4)
    for f in _frames(4, 50):
        for _ in range(10):
            yield f, duality.dual_from_parameter(f, sampling.random_operator(rng, f.shape, len(f), f.rank))


def criterion_4():
    worst_dual = worst_rec = 0.0
    for f, g in _parametrized_duals():
        worst_dual = max(worst_dual, duality.is_dual(f, g).residual)
        worst_rec = max(worst_rec, duality.dual_from_parameter(f, g.analysis).analysis.max_abs_diff(g.analysis))
    ok = worst_dual <= 1e-9 and worst_rec <= 1e-9
    return ok, f"500 duals: max |V*U - I| {worst_dual:.2e}, max L=V recovery error {worst_rec:.2e}"


def criterion_5():
    worst = np.inf
    for f, g in _parametrized_duals():
        worst = min(worst, duality.minimality_margin(duality.dual_pair(f, g)))
    return worst >= -1e-9, f"min eigenvalue of V*V - S^-1 over 500 duals {worst:.2e} (>= -1e-9)"


def criterion_6():
    worst_idem, mismatches, canonical = 0.0, 0, 0
    for f, g in _parametrized_duals():
        rep = duality.oblique_structure(duality.dual_pair(f, g))
        worst_idem = max(worst_idem, rep.idempotency_residual)
        canon_v = ms.compose(f.analysis, frames.inverse_frame_operator(f))
        is_canon = ms.operator_norm(g.analysis - canon_v) <= 1e-9
        canonical += is_canon
        mismatches += rep.is_orthogonal != is_canon
    ok = worst_idem <= 1e-9 and mismatches == 0 and 0 < canonical < 500
    return ok, f"max |F^2 - F| {worst_idem:.2e}; Hermitian/canonical mismatches {mismatches} ({canonical} canonical of 500)"


def criterion_7():
    rng = np.random.default_rng(7)
    built = refused = 0
    worst = 0.0
    for i in range(100):
        shape = SHAPES[i % len(SHAPES)]
        m = int(rng.integers(1, 4))
        f = sampling.random_frame(rng, shape, m, m + int(rng.integers(0, 5)))
        f = f.scaled(rng.uniform(1.0, 1.5) / np.sqrt(frames.optimal_bounds(f)[0]))
        try:
            d = duality.parseval_dual(f)
        except ExistenceFailure:
            refused += 1
            continue
        v = d.analysis
        worst = max(worst, ms.operator_norm(ms.compose(ms.adjoint(v), v) - ms.identity(shape, m)),
                    duality.is_dual(f, d).residual)
        built += 1
    exists = frames.analyze(duality.parseval_dual(sframe(1, 1))).is_parseval
    try:
        duality.parseval_dual(sframe(np.sqrt(2)))
        fails = False
    except InsufficientCorank as exc:
        fails = exc.reason == "corank"
    ok = worst <= 1e-9 and built > 0 and exists and fails
    return ok, (f"{built} built / {refused} refused, max residual {worst:.2e}; "
                f"{{1,1}} exists: {exists}; {{sqrt 2}} fails with corank: {fails}")


def criterion_8():
    rng = np.random.default_rng(8)
    violations = 0
    worst_margin = np.inf
    for i in range(200):
        shape = SHAPES[i % len(SHAPES)]
        m = int(rng.integers(1, 4))
        n = m + int(rng.integers(0, 4))
        f = sampling.random_frame(rng, shape, m, n)
        radius = np.sqrt(frames.optimal_bounds(f)[0])
        w = sampling.random_operator(rng, shape, n, m)
        g = frames.FrameSystem.from_analysis(f.analysis + w * (radius * rng.uniform(0.0, 0.999) / ms.operator_norm(w)))
        v = approximation.perturb_check(f, g)
        margin = frames.optimal_bounds(g)[0] - (v.guaranteed_lower if v.within else np.inf)
        worst_margin = min(worst_margin, margin)
        violations += not v.within or margin < -1e-9
    onb = sframe((1, 0, 0), (0, 1, 0), (0, 0, 1))
    cut = sframe((1, 0, 0), (0, 1, 0), (0, 0, 0))
    edge = approximation.perturb_check(onb, cut)
    sharp = edge.distance == edge.radius == 1.0 and not edge.within
    ok = violations == 0 and sharp
    return ok, (f"200 perturbations, {violations} violations, min A' - (sqrt A - d)^2 = {worst_margin:.2e}; "
                f"truncation distance {edge.distance!r} = sqrt A {edge.radius!r}, within={edge.within}")


def criterion_9():
    rng = np.random.default_rng(9)
    worst_formula = 0.0
    beaten = 0
    for f in _frames(9):
        bp, bt = approximation.best_parseval(f), approximation.best_tight(f)
        worst_formula = max(worst_formula, abs(bp.distance - bp.formula), abs(bt.distance - bt.formula))
        n, m = len(f), f.rank
        # one generic competitor and one near the optimum, for each family
        noisy = frames.FrameSystem.from_analysis(f.analysis + sampling.random_operator(rng, f.shape, n, m) * 1e-3)
        competitors_p = [sampling.random_parseval(rng, f.shape, m, n), frames.canonical_parseval(noisy)]
        competitors_t = [sampling.random_tight(rng, f.shape, m, n),
                         frames.canonical_parseval(noisy).scaled(np.sqrt(bt.tight_constant) * rng.uniform(0.99, 1.01))]
        beaten += sum(ms.operator_norm(f.analysis - w.analysis) < bp.formula - 1e-9 for w in competitors_p)
        beaten += sum(ms.operator_norm(f.analysis - w.analysis) < bt.formula - 1e-9 for w in competitors_t)
    ok = worst_formula <= 1e-9 and beaten == 0
    return ok, f"max |direct - formula| {worst_formula:.2e}; competitors beating the formula: {beaten} of 400"


def criterion_10():
    rng = np.random.default_rng(10)
    worst, too_many, not_refused = 0.0, 0, 0
    for i in range(100):
        shape = SHAPES[i % len(SHAPES)]
        m = int(rng.integers(1, 4))
        f = sampling.random_bessel_unit(rng, shape, m, int(rng.integers(1, 6)))
        res = extension.extend_to_parseval(f)
        too_many += len(res.added) > m
        worst = max(worst, ms.operator_norm(res.combined.frame_operator - ms.identity(shape, m)))
        upper = frames.optimal_bounds(f)[1]
        if upper > 0:
            try:
                extension.extend_to_parseval(f.scaled(np.sqrt(rng.uniform(1.01, 3.0) / upper)))
                not_refused += 1
            except BesselBoundExceedsOne:
                pass
    ok = worst <= 1e-8 and too_many == 0 and not_refused == 0
    return ok, f"max |S - I| {worst:.2e}; over-count {too_many}; B > 1 accepted {not_refused} times"


def criterion_11():
    rng = np.random.default_rng(11)
    worst_inner, worst_b64, over, non_mono = 0.0, 0.0, 0, 0
    for i in range(200):
        x, a = sampling.random_dominated_pair(rng, SHAPES[i % len(SHAPES)], int(rng.integers(1, 4)))
        z = extension.dominated_sqrt_factor(x, a)
        worst_inner = max(worst_inner, (ms.inner_product(z, z) - a).norm())
        tr = extension.approximating_sequence(x, a, n_max=64)
        worst_b64 = max(worst_b64, tr.residuals[-1])
        over += tr.residuals[-1] > 1e-3
        non_mono += not tr.monotone
    ok = worst_inner <= 1e-8 and over == 0 and non_mono == 0
    return ok, (f"max |<z,z> - a| {worst_inner:.2e}; |b_64 - b| > 1e-3 on {over}/200 pairs "
                f"(max {worst_b64:.2e}); non-monotone {non_mono}")


def criterion_12():
    rng = np.random.default_rng(12)
    disagree = in_a_frames = 0
    worst_complete = 0.0
    for _ in range(1000):
        vs = sampling.random_tail_system(rng)
        v = nu.classify_finite_system(vs)
        disagree += v.strict_check != (v.lower > 0.0)
        if all(x.in_ideal for x in vs):
            in_a_frames += v.kind != "not_frame"
        s = nu.coordinate_sums(vs).max()
        if s > 1:
            vs = [nu.seq_scale(x, 1 / np.sqrt(s)) for x in vs]
        done = nu.classify_finite_system(nu.outer_parseval_complete(vs))
        worst_complete = max(worst_complete, abs(done.lower - 1), abs(done.upper - 1))
    e = nu.classify_finite_system([nu.unit()])
    e_ok = e.kind == "outer_frame" and e.lower == 1.0 and e.upper == 1.0
    ok = disagree == 0 and in_a_frames == 0 and e_ok and worst_complete <= 1e-12
    return ok, (f"verdict disagreements {disagree}/1000; all-in-A systems not 'not_frame': {in_a_frames}; "
                f"{{e}} outer Parseval: {e_ok}; completion max |A-1|,|B-1| {worst_complete:.1e}")


def criterion_13():
    rng = np.random.default_rng(13)
    worst_rec = worst_orth = 0.0
    disagree = checked = 0
    for i in range(1000):
        n = 1 + i % 12
        g = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
        m = 0.5 * (g + g.conj().T)
        e = linalg.eig_hermitian(m)
        worst_rec = max(worst_rec, float(np.max(np.abs(e.reconstruct() - m))))
        worst_orth = max(worst_orth, float(np.max(np.abs(e.eigenvectors.conj().T @ e.eigenvectors - np.eye(n)))))
        shifted = m + rng.uniform(0, 2.5) * np.eye(n)
        res = linalg.psd_check(shifted)
        if abs(res.min_eig) > 1e-6:
            checked += 1
            disagree += res.is_psd != cholesky_succeeds(shifted)
    ok = worst_rec <= 1e-10 and worst_orth <= 1e-10 and disagree == 0
    return ok, (f"max reconstruction {worst_rec:.2e}, max orthonormality {worst_orth:.2e}; "
                f"PSD disagreements {disagree}/{checked}")


CRITERIA = [
    (1, "canonical-dual reconstruction", criterion_1),
    (2, "optimal bounds, two routes", criterion_2),
    (3, "Parseval iff theta-sum is identity", criterion_3),
    (4, "dual parametrization", criterion_4),
    (5, "canonical-dual minimality", criterion_5),
    (6, "oblique/orthogonal dichotomy", criterion_6),
    (7, "Parseval-dual construction", criterion_7),
    (8, "perturbation bound and sharpness", criterion_8),
    (9, "closed-form approximation distances", criterion_9),
    (10, "extension to Parseval frames", criterion_10),
    (11, "dominated square-root factorisation", criterion_11),
    (12, "non-unital model", criterion_12),
    (13, "kernel soundness", criterion_13),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check):
    passed, detail = check()
    _report(number, title, passed, detail)
    assert passed, detail


if __name__ == "__main__":
    results = []
    for number, title, check in CRITERIA:
        passed, detail = check()
        _report(number, title, passed, detail)
        results.append(passed)
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
