"""Principal component analysis on angle vectors, written from scratch.

The fit forms the 67x67 sample covariance matrix (divisor n-1) and
diagonalizes it with a cyclic Jacobi eigensolver. Components are the
top-k eigenvectors ordered by non-increasing eigenvalue, each sign-fixed
so its largest-magnitude entry is positive. For a 67x67 symmetric matrix
Jacobi is both simple and accurate; the test suite checks it against a
dense eigensolver oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from .errors import KTooLarge, TooFewSamples
from .features import N_ANGLES, AngleVector
from .landmarks import SentenceClass


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray  # (d,)
    components: np.ndarray  # (k, d), orthonormal rows
    explained_variance: np.ndarray  # (k,), non-increasing
    k: int


@dataclass(frozen=True)
class FeatureMatrix:
    """Stacked angle vectors with row-aligned labels and frame ids."""

    rows: np.ndarray  # (n, 67)
    labels: tuple  # n entries, SentenceClass or None
    frame_ids: tuple

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[1] != N_ANGLES:
            raise ValueError(f"expected (n, {N_ANGLES}) rows, got {rows.shape}")
        if len(self.labels) != rows.shape[0] or len(self.frame_ids) != rows.shape[0]:
            raise ValueError("labels/frame_ids misaligned with rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "frame_ids", tuple(self.frame_ids))

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @classmethod
    def from_angle_vectors(
        cls, vectors: Iterable[AngleVector], labels: Iterable[Optional[SentenceClass]]
    ) -> "FeatureMatrix":
        vecs = list(vectors)
        return cls(
            np.array([v.angles for v in vecs]),
            tuple(labels),
            tuple(v.source_frame_id for v in vecs),
        )


def _jacobi_kernel(a: np.ndarray, v: np.ndarray, tol: float, max_sweeps: int) -> None:
    """Cyclic Jacobi sweeps, in place; numba-compatible plain loops."""
    d = a.shape[0]
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += a[p, q] * a[p, q]
        if np.sqrt(off) <= tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= 1e-20 * scale:
                    continue
                # classic Jacobi rotation annihilating a[p, q]
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq


try:  # compiled kernel when numba is present; same code path either way
    from numba import njit

    _jacobi_kernel = njit(cache=True)(_jacobi_kernel)
except ImportError:  # pragma: no cover
    pass


def jacobi_eigh(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) with eigenvectors in columns, in
    the order the sweeps leave them (unsorted). Deterministic for a given
    input matrix.
    """
    a = np.array(matrix, dtype=np.float64)
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError("matrix must be square")
    v = np.eye(d)
    if d > 1:
        _jacobi_kernel(a, v, tol, max_sweeps)
    return np.diag(a).copy(), v


def _fix_signs(components: np.ndarray) -> np.ndarray:
    """Flip each row so its largest-magnitude entry is positive."""
    out = components.copy()
    for row in out:
        j = int(np.argmax(np.abs(row)))
        if row[j] < 0:
            row *= -1.0
    return out


def fit_pca(data: FeatureMatrix, k: int) -> PcaModel:
    """Fit mean + top-k orthonormal basis on the rows of ``data``."""
    x = data.rows
    n, d = x.shape
    if n < 2:
        raise TooFewSamples(f"PCA fit needs at least 2 rows, got {n}")
    if not 1 <= k <= min(n - 1, d):
        raise KTooLarge(f"k={k} exceeds min(n-1, d) = {min(n - 1, d)}")

    mean = x.mean(axis=0)
    centered = x - mean
    cov = centered.T @ centered / (n - 1)
    eigvals, eigvecs = jacobi_eigh(cov)

    order = np.argsort(-eigvals, kind="stable")
    eigvals = np.clip(eigvals[order], 0.0, None)  # covariance is PSD
    components = _fix_signs(eigvecs[:, order].T[:k])
    return PcaModel(mean, components, eigvals[:k], k)


def transform(model: PcaModel, v: np.ndarray) -> np.ndarray:
    """Project one vector or a stack of vectors onto the component basis."""
    return (np.asarray(v, dtype=np.float64) - model.mean) @ model.components.T


def inverse_transform(model: PcaModel, z: np.ndarray) -> np.ndarray:
    """Map k-space coordinates back to the original space."""
    return model.mean + np.asarray(z, dtype=np.float64) @ model.components
