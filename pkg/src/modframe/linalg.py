"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every spectrum in
the package comes from :func:`eig_hermitian` (cyclic Jacobi) and every rank
from :func:`singular_values` (one-sided Jacobi); nothing here calls LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import _kernels
from .errors import DomainError, NoConvergence, NonSquare, NotHermitian
from .tolerances import TAU_EIG, TAU_HERM, TAU_PSD, TAU_RANK


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation ``max |M - M*|``."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def hermitize(m, tau_herm: float = TAU_HERM) -> np.ndarray:
    """Check Hermiticity within ``tau_herm`` and return ``(M + M*) / 2``."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NonSquare(f"matrix of shape {a.shape} is not square")
    defect = hermitian_defect(a)
    if defect > tau_herm:
        raise NotHermitian(f"max entry asymmetry {defect:.3e} exceeds {tau_herm:.1e}")
    return 0.5 * (a + a.conj().T)


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(m, tau_eig: float = TAU_EIG, tau_herm: float = TAU_HERM) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NonSquare, NotHermitian, or NoConvergence (sweep limit hit, or the
    reconstruction misses ``M`` by more than ``tau_eig * max(1, |M|_max)``).
    """
    a = hermitize(m, tau_herm)
    w, v, sweeps = _kernels.eigh_jacobi(a)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi sweep limit ({_kernels.MAX_SWEEPS}) exceeded")
    order = np.argsort(w, kind="stable")
    eig = HermitianEigen(w[order], v[:, order])
    if a.size:
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(eig.reconstruct() - a)) > tau_eig * scale:
            raise NoConvergence("eigendecomposition does not reproduce the input")
    return eig


def apply_spectral_function(
    m, f: Callable[[np.ndarray], np.ndarray], tau_eig: float = TAU_EIG
) -> np.ndarray:
    """Return ``V diag(f(lambda)) V*`` for Hermitian ``M``.

    ``f`` receives the eigenvalue array. Non-finite values of ``f`` raise
    DomainError.
    """
    eig = eig_hermitian(m, tau_eig)
    with np.errstate(divide="ignore", invalid="ignore"):
        fl = np.asarray(f(eig.eigenvalues))
    if fl.shape != eig.eigenvalues.shape or not np.all(np.isfinite(fl)):
        raise DomainError("spectral function undefined on the spectrum")
    v = eig.eigenvectors
    return (v * fl) @ v.conj().T


def singular_values(m) -> np.ndarray:
    """Singular values in descending order (length ``min(rows, cols)``)."""
    a = as_matrix(m)
    s, sweeps = _kernels.singular_values_jacobi(a)
    if sweeps < 0:
        raise NoConvergence("one-sided Jacobi sweep limit exceeded")
    return np.sort(s)[::-1]


def op_norm(m) -> float:
    """Largest singular value, computed as ``sqrt(lambda_max(M* M))``."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    gram = a.conj().T @ a if a.shape[0] >= a.shape[1] else a @ a.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    lam = eig_hermitian(gram, tau_herm=np.inf).eigenvalues[-1]
    return float(np.sqrt(max(lam, 0.0)))


class PsdResult(NamedTuple):
    is_psd: bool
    min_eig: float


def psd_check(m, tau_psd: float = TAU_PSD) -> PsdResult:
    """PSD verdict: ``min_eig >= -tau_psd * (1 + |M|)``."""
    lam = eig_hermitian(m).eigenvalues
    if lam.size == 0:
        return PsdResult(True, 0.0)
    norm = float(np.max(np.abs(lam)))
    min_eig = float(lam[0])
    return PsdResult(min_eig >= -tau_psd * (1.0 + norm), min_eig)


def numerical_rank(m, tau_rank: float = TAU_RANK) -> int:
    """Number of singular values above ``tau_rank * sigma_max``."""
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tau_rank * s[0]))
