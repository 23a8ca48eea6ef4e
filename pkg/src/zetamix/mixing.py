"""Batch augmentation by convex combination of samples.

Two methods over a feature batch X (N x D) and soft labels Y (N x K):

* pairwise mixing: one lambda per batch, each sample blended with a random
  partner, ``x' = lam * x_i + (1 - lam) * x_j``;
* multi-sample mixing: a full row-stochastic weight matrix W built from
  permuted p-series weights, applied as a single matrix product
  ``X' = W X``, ``Y' = W Y``.

Both return an :class:`AugmentedBatch` that records the weights actually
used, so outputs can be re-validated after the fact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .weights import validate_weight_matrix, weight_matrix

SOFT_LABEL_ATOL = 1e-9


@dataclass
class AugmentedBatch:
    """Synthesized features/labels plus the mixing weights that made them."""

    features: np.ndarray     # (N, D), dtype follows the input features
    soft_labels: np.ndarray  # (N, K), float64
    weights_used: np.ndarray  # (N, N), float64, row-stochastic


def one_hot(labels: np.ndarray, k: int) -> np.ndarray:
    """One-hot encode integer class labels into an (N, k) float64 matrix."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError(f"labels must be 1-D, got shape {labels.shape}")
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise ValueError(
            f"labels must lie in [0, {k}), got range "
            f"[{labels.min()}, {labels.max()}]"
        )
    out = np.zeros((labels.size, int(k)), dtype=np.float64)
    out[np.arange(labels.size), labels.astype(np.int64)] = 1.0
    return out


def mixup_pair(x_i, x_j, y_i, y_j, lam: float):
    """Blend one pair of samples: lam * (x_i, y_i) + (1 - lam) * (x_j, y_j)."""
    lam = float(lam)
    if not (0.0 <= lam <= 1.0):
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    x_i, x_j = np.asarray(x_i), np.asarray(x_j)
    y_i, y_j = np.asarray(y_i), np.asarray(y_j)
    if x_i.shape != x_j.shape or y_i.shape != y_j.shape:
        raise ValueError("sample and label shapes must match pairwise")
    return lam * x_i + (1.0 - lam) * x_j, lam * y_i + (1.0 - lam) * y_j


def _check_batch(features: np.ndarray, soft_labels: np.ndarray):
    x = np.asarray(features)
    y = np.asarray(soft_labels, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2:
        raise ValueError("features and soft labels must both be 2-D")
    if x.shape[0] != y.shape[0]:
        raise ValueError(
            f"row-count mismatch: {x.shape[0]} feature rows vs "
            f"{y.shape[0]} label rows"
        )
    if not np.all(np.isfinite(x)):
        raise NumericError("features contain non-finite entries")
    return x, y


def mixup_batch(
    features: np.ndarray,
    soft_labels: np.ndarray,
    alpha: float = 1.0,
    *,
    rng: np.random.Generator,
    lam: float | None = None,
) -> AugmentedBatch:
    """Pairwise mixing over a batch.

    One lambda ~ Beta(alpha, alpha) is drawn per batch; each row is blended
    with a partner taken from a uniform shuffle of the batch.  ``lam``
    overrides the draw (used for deterministic tests).
    """
    x, y = _check_batch(features, soft_labels)
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"pairwise mixing needs at least 2 samples, got {n}")
    if lam is None:
        if not (float(alpha) > 0.0):
            raise ValueError(f"alpha must be > 0, got {alpha}")
        lam = float(rng.beta(alpha, alpha))
    elif not (0.0 <= float(lam) <= 1.0):
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    partner = rng.permutation(n)

    # Python-float scalars do not upcast the array dtype (NEP 50), so the
    # blend runs in the precision of the feature batch.
    mixed_x = lam * x + (1.0 - lam) * x[partner]
    mixed_y = lam * y + (1.0 - lam) * y[partner]

    w = np.zeros((n, n), dtype=np.float64)
    rows = np.arange(n)
    w[rows, rows] += lam
    w[rows, partner] += 1.0 - lam
    return AugmentedBatch(mixed_x, mixed_y, w)


def zeta_mixup_batch(
    features: np.ndarray,
    soft_labels: np.ndarray,
    gamma: float,
    *,
    rng: np.random.Generator | None = None,
    weights: np.ndarray | None = None,
) -> AugmentedBatch:
    """Multi-sample mixing: one weight-matrix product per tensor.

    Weights come from :func:`zetamix.weights.weight_matrix` (independent
    random rank orderings per output row) unless an explicit row-stochastic
    ``weights`` matrix is injected, which makes the result fully
    deterministic regardless of ``rng``.
    """
    x, y = _check_batch(features, soft_labels)
    n = x.shape[0]
    if weights is None:
        if rng is None:
            raise ValueError("either rng or an explicit weights matrix is required")
        w = weight_matrix(n, gamma, rng)
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (n, n):
            raise ValueError(f"weights must be ({n}, {n}), got {w.shape}")

    # The product runs in the precision of the feature batch; weights are
    # always built in float64 and downcast only at multiply time.
    if x.dtype == np.float32:
        mixed_x = w.astype(np.float32) @ x
    else:
        mixed_x = w @ np.asarray(x, dtype=np.float64)
    mixed_y = w @ y
    return AugmentedBatch(mixed_x, mixed_y, w)


def validate_soft_labels(soft_labels: np.ndarray, atol: float = SOFT_LABEL_ATOL) -> list[str]:
    """Probability-matrix check; returns a list of human-readable failures."""
    y = np.asarray(soft_labels, dtype=np.float64)
    problems = []
    if y.ndim != 2:
        return [f"soft labels must be 2-D, got shape {y.shape}"]
    if not np.all(np.isfinite(y)):
        problems.append("soft labels contain non-finite entries")
    if np.any(y < 0.0):
        problems.append(f"soft labels contain negative entries (min {y.min():.3e})")
    sums = y.sum(axis=1)
    worst = float(np.abs(sums - 1.0).max()) if sums.size else 0.0
    if worst > atol:
        problems.append(f"label row sums deviate from 1 by up to {worst:.3e} (> {atol:g})")
    return problems


def validate_artifacts(
    soft_labels: np.ndarray | None = None,
    weights: np.ndarray | None = None,
) -> list[tuple[str, bool, str]]:
    """Re-validate augmentation outputs: row-stochastic weights and
    soft-label rows that sum to 1.  Returns (check, passed, detail) triples.
    """
    if soft_labels is None and weights is None:
        raise ValueError("nothing to validate: provide soft labels and/or weights")
    checks = []
    if soft_labels is not None:
        problems = validate_soft_labels(soft_labels)
        checks.append(("soft_labels_row_stochastic", not problems, "; ".join(problems) or "ok"))
    if weights is not None:
        problems = validate_weight_matrix(weights)
        checks.append(("weights_row_stochastic", not problems, "; ".join(problems) or "ok"))
    return checks
