"""Small dense symmetric linear algebra.

Cyclic Jacobi eigendecomposition and an eigenvalue-based Moore-Penrose
pseudoinverse for the n x n (n <= 16) matrices that appear in range
computations, plus the closed-form largest eigenvalue of a qubit operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionMismatch, NotPSD

MAX_SWEEPS = 50
OFF_DIAGONAL_TOL = 1e-14
MAX_DIM = 16


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns, orthonormal

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def _as_symmetric(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"matrix dimension {a.shape[0]} exceeds {MAX_DIM}")
    return 0.5 * (a + a.T)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eig_sym(a) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues are returned in descending order. Each eigenvector is signed so
    that its largest-magnitude entry is positive, which makes the output a
    deterministic function of the input bits.
    """
    a = _as_symmetric(a)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n > 1 and scale > 0.0:
        for _ in range(MAX_SWEEPS):
            if _off_norm(a) <= OFF_DIAGONAL_TOL * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    if abs(apq) * 1e150 < abs(diff):
                        # tau would overflow; small-angle limit t = 1 / (2 tau)
                        t = apq / diff
                    elif (tau := diff / (2.0 * apq)) >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, q] = a[q, p] = 0.0
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
        else:
            if _off_norm(a) > OFF_DIAGONAL_TOL * scale:
                raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    return EigenDecomposition(eigenvalues, fix_signs(v[:, order]))


def fix_signs(v: np.ndarray) -> np.ndarray:
    """Flip columns so the first largest-magnitude entry of each is positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        j = int(np.argmax(np.abs(v[:, k])))
        if v[j, k] < 0.0:
            v[:, k] = -v[:, k]
    return v


@dataclass(frozen=True)
class PseudoInverse:
    pinv: np.ndarray
    kernel_projector: np.ndarray
    rank: int
    eig: EigenDecomposition


def pinv_sym(a, rel_tol: float = 1e-10) -> PseudoInverse:
    """Moore-Penrose pseudoinverse of a symmetric positive semidefinite matrix.

    Eigenvalues at or below ``rel_tol * lambda_max`` are treated as zero. The
    kernel projector ``1 - pinv @ a`` is assembled from the discarded
    eigenvectors, which equals it exactly for the truncated decomposition and
    stays accurate when retained eigenvalues are small.
    """
    eig = eig_sym(a)
    n = eig.eigenvalues.size
    lam_max = float(eig.eigenvalues[0]) if n else 0.0
    cutoff = rel_tol * lam_max if lam_max > 0.0 else 0.0
    if lam_max > 0.0 and eig.eigenvalues[-1] < -10.0 * cutoff:
        raise NotPSD(f"eigenvalue {eig.eigenvalues[-1]:.3e} is negative beyond tolerance")
    keep = eig.eigenvalues > cutoff if lam_max > 0.0 else np.zeros(n, dtype=bool)
    rank = int(np.count_nonzero(keep))
    v_keep = eig.eigenvectors[:, keep]
    v_drop = eig.eigenvectors[:, ~keep]
    pinv = (v_keep / eig.eigenvalues[keep]) @ v_keep.T
    kernel = v_drop @ v_drop.T
    return PseudoInverse(
        pinv=0.5 * (pinv + pinv.T),
        kernel_projector=0.5 * (kernel + kernel.T),
        rank=rank,
        eig=eig,
    )


def lambda_max_qubit(a: float, b) -> float:
    """Largest eigenvalue of ``a*1 + b . sigma``, i.e. ``a + |b|``."""
    return float(a) + float(np.linalg.norm(np.asarray(b, dtype=float)))
