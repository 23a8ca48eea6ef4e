"""Local intrinsic dimensionality via k-nearest-neighbour PCA.

For every point, the neighbourhood (the point itself plus its k nearest
neighbours) is centred and the eigenvalues of its covariance are computed;
the local dimension is the number of eigenvalues strictly larger than a
fixed fraction (default 5%) of the largest one.  Points whose neighbourhood
is a single repeated location are degenerate: they report dimension 0 and
are excluded from the aggregate statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError

DEFAULT_EIGEN_THRESHOLD = 0.05

# Above this size the neighbour search switches from a full stable argsort
# to argpartition + lexsort; both orderings break distance ties in favour of
# the lower point index.
_ARGSORT_MAX_N = 2048
_CHUNK_ROWS = 1024


@dataclass
class IdSummary:
    per_point: np.ndarray   # (n,) int64, 0 marks a degenerate neighbourhood
    mean: float             # over non-degenerate points
    std: float              # population std over non-degenerate points
    k: int
    eigen_threshold: float
    n_degenerate: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "threshold": self.eigen_threshold,
            "mean": self.mean,
            "std": self.std,
            "n_degenerate": self.n_degenerate,
            "per_point": [int(v) for v in self.per_point],
        }


def knn(points: np.ndarray, k: int) -> np.ndarray:
    """Exact k-nearest-neighbour table by Euclidean distance.

    Returns an (n, k) index array; the query point itself is excluded and
    equal distances are broken by the lower index.  Distances are computed
    blockwise from the Gram matrix, so memory stays bounded for large n.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"points must be 2-D, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NumericError("points contain non-finite entries")
    n = x.shape[0]
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k >= n:
        raise ValueError(f"k must be < number of points, got k={k}, n={n}")

    sq = np.einsum("ij,ij->i", x, x)
    out = np.empty((n, k), dtype=np.int64)
    for start in range(0, n, _CHUNK_ROWS):
        end = min(start + _CHUNK_ROWS, n)
        d2 = sq[start:end, None] + sq[None, :] - 2.0 * (x[start:end] @ x.T)
        np.maximum(d2, 0.0, out=d2)
        d2[np.arange(end - start), np.arange(start, end)] = np.inf
        if n <= _ARGSORT_MAX_N:
            out[start:end] = np.argsort(d2, axis=1, kind="stable")[:, :k]
        else:
            cand = np.argpartition(d2, k, axis=1)[:, :k]
            cand_d = np.take_along_axis(d2, cand, axis=1)
            order = np.lexsort((cand, cand_d), axis=1)
            out[start:end] = np.take_along_axis(cand, order, axis=1)
    return out


def _significant_eigvals(eigvals: np.ndarray, threshold: float) -> int:
    lmax = float(eigvals[-1])
    if lmax <= 0.0:
        return 0
    return int((eigvals > threshold * lmax).sum())


def local_pca_id(neighborhood: np.ndarray, eigen_threshold: float = DEFAULT_EIGEN_THRESHOLD) -> int:
    """Local dimension of one neighbourhood by the relative-eigenvalue rule.

    Returns 0 only when all points coincide (degenerate neighbourhood).
    When the ambient dimension exceeds the neighbourhood size, the Gram
    matrix is used instead of the covariance: the nonzero spectra agree.
    """
    pts = np.asarray(neighborhood, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("neighborhood must be 2-D with at least 2 points")
    if not (0.0 < float(eigen_threshold) < 1.0):
        raise ValueError(f"eigen_threshold must be in (0, 1), got {eigen_threshold}")
    m, d = pts.shape
    centered = pts - pts.mean(axis=0)
    if d <= m:
        cov = centered.T @ centered / (m - 1)
    else:
        cov = centered @ centered.T / (m - 1)
    eigvals = np.linalg.eigvalsh(cov)
    return _significant_eigvals(eigvals, float(eigen_threshold))


def dataset_local_id(
    points: np.ndarray,
    k: int,
    eigen_threshold: float = DEFAULT_EIGEN_THRESHOLD,
) -> IdSummary:
    """Per-point local dimension over a dataset, plus mean/std aggregates.

    Each point's neighbourhood is itself plus its k nearest neighbours.
    The per-point estimates come from the same eigenvalue rule as
    :func:`local_pca_id`; small ambient dimensions are processed with
    batched covariance eigendecompositions for speed.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"points must be 2-D, got shape {x.shape}")
    if not (0.0 < float(eigen_threshold) < 1.0):
        raise ValueError(f"eigen_threshold must be in (0, 1), got {eigen_threshold}")
    threshold = float(eigen_threshold)
    n, d = x.shape
    neighbors = knn(x, k)
    members = np.concatenate([np.arange(n)[:, None], neighbors], axis=1)  # (n, k+1)
    m = k + 1

    ids = np.empty(n, dtype=np.int64)
    if d <= m:
        for start in range(0, n, _CHUNK_ROWS):
            end = min(start + _CHUNK_ROWS, n)
            hood = x[members[start:end]]                      # (c, m, d)
            hood = hood - hood.mean(axis=1, keepdims=True)
            cov = np.einsum("cmd,cme->cde", hood, hood) / (m - 1)
            eigvals = np.linalg.eigvalsh(cov)                 # ascending
            lmax = eigvals[:, -1]
            counts = (eigvals > threshold * lmax[:, None]).sum(axis=1)
            counts[lmax <= 0.0] = 0
            ids[start:end] = counts
    else:
        for i in range(n):
            ids[i] = local_pca_id(x[members[i]], threshold)

    good = ids > 0
    n_degenerate = int(n - good.sum())
    if good.any():
        mean = float(ids[good].mean())
        std = float(ids[good].std())
    else:
        mean = 0.0
        std = 0.0
    return IdSummary(
        per_point=ids,
        mean=mean,
        std=std,
        k=int(k),
        eigen_threshold=threshold,
        n_degenerate=n_degenerate,
    )
