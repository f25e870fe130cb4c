"""Cyclic Jacobi kernels for complex matrices.

Each kernel exists twice: an explicit-loop version compiled with numba and a
vectorised numpy version with the same rotation sequence. ``eigh_jacobi`` and
``singular_values_jacobi`` dispatch on ``_jit.USE_JIT``.
"""

import math

import numpy as np

from . import _jit

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-14
_TINY = 1e-300


@_jit.njit
def _rotation(app, aqq, apq):
    # Unitary G (returned by its four entries) with G^H [[app, apq], [conj(apq), aqq]] G diagonal.
    r = abs(apq)
    ph = apq / r
    theta = (aqq - app) / (2.0 * r)
    if theta >= 0.0:
        t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    gpp = complex(c, 0.0)
    gpq = s * ph
    gqp = -s * ph.conjugate()
    gqq = complex(c, 0.0)
    return gpp, gpq, gqp, gqq


@_jit.njit
def _offdiag_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j].real ** 2 + a[i, j].imag ** 2
    return math.sqrt(acc)


@_jit.njit
def _eigh_loops(m):
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    fro = math.sqrt(fro)
    target = OFF_DIAGONAL_RTOL * fro
    sweeps = 0
    while _offdiag_norm(a) > target:
        if sweeps >= MAX_SWEEPS:
            return np.zeros(n), v, -1
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < _TINY:
                    continue
                gpp, gpq, gqp, gqq = _rotation(a[p, p].real, a[q, q].real, apq)
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = aip * gpp + aiq * gqp
                    a[i, q] = aip * gpq + aiq * gqq
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = gpp.conjugate() * apj + gqp.conjugate() * aqj
                    a[q, j] = gpq.conjugate() * apj + gqq.conjugate() * aqj
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = vip * gpp + viq * gqp
                    v[i, q] = vip * gpq + viq * gqq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps


def _eigh_numpy(m):
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n, dtype=np.complex128)
    offmask = ~np.eye(n, dtype=bool)
    target = OFF_DIAGONAL_RTOL * np.linalg.norm(a)
    sweeps = 0
    while np.sqrt(np.sum(np.abs(a[offmask]) ** 2)) > target:
        if sweeps >= MAX_SWEEPS:
            return np.zeros(n), v, -1
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < _TINY:
                    continue
                r = abs(apq)
                ph = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s * ph], [-s * np.conj(ph), c]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    return np.diag(a).real.copy(), v, sweeps


@_jit.njit
def _svals_loops(m, tol):
    # one-sided (Hestenes) Jacobi on the columns of a tall matrix
    rows, cols = m.shape
    w = m.copy()
    sweeps = 0
    rotated = True
    while rotated:
        if sweeps >= MAX_SWEEPS:
            return np.zeros(cols), -1
        sweeps += 1
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0j
                for i in range(rows):
                    alpha += w[i, p].real ** 2 + w[i, p].imag ** 2
                    beta += w[i, q].real ** 2 + w[i, q].imag ** 2
                    gamma += w[i, p].conjugate() * w[i, q]
                if abs(gamma) < _TINY or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                gpp, gpq, gqp, gqq = _rotation(alpha, beta, gamma)
                for i in range(rows):
                    wip = w[i, p]
                    wiq = w[i, q]
                    w[i, p] = wip * gpp + wiq * gqp
                    w[i, q] = wip * gpq + wiq * gqq
    s = np.empty(cols)
    for j in range(cols):
        acc = 0.0
        for i in range(rows):
            acc += w[i, j].real ** 2 + w[i, j].imag ** 2
        s[j] = math.sqrt(acc)
    return s, sweeps


def _svals_numpy(m, tol):
    rows, cols = m.shape
    w = m.copy()
    sweeps = 0
    rotated = True
    while rotated:
        if sweeps >= MAX_SWEEPS:
            return np.zeros(cols), -1
        sweeps += 1
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                wp = w[:, p]
                wq = w[:, q]
                alpha = np.vdot(wp, wp).real
                beta = np.vdot(wq, wq).real
                gamma = np.vdot(wp, wq)
                if abs(gamma) < _TINY or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                r = abs(gamma)
                ph = gamma / r
                theta = (beta - alpha) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s * ph], [-s * np.conj(ph), c]], dtype=np.complex128)
                w[:, [p, q]] = w[:, [p, q]] @ g
    return np.sqrt(np.sum(np.abs(w) ** 2, axis=0)), sweeps


def eigh_jacobi(m, use_jit=None):
    """Raw cyclic Jacobi on a complex Hermitian array.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` unsorted; ``sweeps == -1``
    signals that the sweep limit was hit.
    """
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if use_jit is None:
        use_jit = _jit.USE_JIT
    if m.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128), 0
    return _eigh_loops(m) if use_jit else _eigh_numpy(m)


def singular_values_jacobi(m, use_jit=None):
    """Singular values (unsorted) by one-sided Jacobi; ``sweeps == -1`` on failure."""
    m = np.asarray(m, dtype=np.complex128)
    if m.shape[0] < m.shape[1]:
        m = m.conj().T
    m = np.ascontiguousarray(m)
    if use_jit is None:
        use_jit = _jit.USE_JIT
    if m.size == 0:
        return np.zeros(min(m.shape)), 0
    tol = max(1e-15, m.shape[0] * np.finfo(float).eps)
    return _svals_loops(m, tol) if use_jit else _svals_numpy(m, tol)
