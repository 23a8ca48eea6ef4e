"""Realism and label-correctness metrics over classifier predictions.

Entropy of an external reference classifier's predictions proxies how
recognizable a synthetic sample is; the cross entropy of those predictions
against the soft label assigned by the augmentation measures label
correctness.  Both are reported in nats.  Distributions of either metric can
be exported as a unit-area histogram with an optional Gaussian KDE curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PROB_ATOL = 1e-6        # tolerance on row sums of probability vectors
LOG_CLAMP = 1e-12       # floor applied to soft labels before the log
KDE_POINTS = 256


def _check_prob_rows(p: np.ndarray, name: str) -> np.ndarray:
    rows = np.asarray(p, dtype=np.float64)
    squeeze = rows.ndim == 1
    if squeeze:
        rows = rows[None, :]
    if rows.ndim != 2 or rows.shape[1] < 1:
        raise ValueError(f"{name} must be a probability vector or matrix")
    if not np.all(np.isfinite(rows)):
        raise ValueError(f"{name} contains non-finite entries")
    if np.any(rows < 0.0):
        raise ValueError(f"{name} contains negative entries")
    err = np.abs(rows.sum(axis=1) - 1.0)
    if np.any(err > PROB_ATOL):
        raise ValueError(
            f"{name} rows must sum to 1 within {PROB_ATOL:g}; "
            f"worst deviation {float(err.max()):.3e}"
        )
    return rows


def entropy_rows(p: np.ndarray) -> np.ndarray:
    """Shannon entropy (nats) of each probability row, with 0*ln(0) = 0."""
    rows = _check_prob_rows(p, "probabilities")
    contrib = np.where(rows > 0.0, rows * np.log(np.where(rows > 0.0, rows, 1.0)), 0.0)
    return -contrib.sum(axis=1) + 0.0  # "+ 0.0" turns -0.0 into 0.0


def entropy(p: np.ndarray) -> float:
    """Shannon entropy (nats) of one probability vector; in [0, ln K]."""
    return float(entropy_rows(np.asarray(p, dtype=np.float64).reshape(1, -1))[0])


def cross_entropy_rows(oracle_p: np.ndarray, soft_labels: np.ndarray) -> np.ndarray:
    """Row-wise cross entropy -sum(oracle * ln(soft)) in nats.

    Soft-label entries are clamped to LOG_CLAMP before the log, so a
    reference prediction that disagrees with a one-hot soft label yields a
    large finite value instead of infinity.
    """
    p = _check_prob_rows(oracle_p, "reference predictions")
    q = _check_prob_rows(soft_labels, "soft labels")
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    return -(p * np.log(np.maximum(q, LOG_CLAMP))).sum(axis=1) + 0.0


def cross_entropy(oracle_p: np.ndarray, soft_label: np.ndarray) -> float:
    """Cross entropy (nats) of one prediction vector against one soft label."""
    return float(
        cross_entropy_rows(
            np.asarray(oracle_p, dtype=np.float64).reshape(1, -1),
            np.asarray(soft_label, dtype=np.float64).reshape(1, -1),
        )[0]
    )


@dataclass
class Distribution:
    """Unit-area histogram plus an optional-bandwidth Gaussian KDE curve."""

    hist_x: np.ndarray       # bin centres
    hist_density: np.ndarray
    bin_width: float
    kde_x: np.ndarray
    kde_density: np.ndarray
    bandwidth: float


def export_distribution(
    values,
    bins: int,
    kde_bandwidth: float | None = None,
) -> Distribution:
    """Summarize a sample of reals as (x, density) curves.

    The histogram covers [min, max] with equal-width bins and integrates to
    one; a degenerate range (all values equal) is widened to one unit around
    the value.  The KDE is sampled at 256 points with bandwidth
    ``kde_bandwidth`` or Scott's rule sigma * n^(-1/5), falling back to 1.0
    when the sample has no spread.
    """
    vals = np.asarray(values, dtype=np.float64).ravel()
    if vals.size < 1:
        raise ValueError("need at least one value")
    if not np.all(np.isfinite(vals)):
        raise ValueError("values contain non-finite entries")
    bins = int(bins)
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")

    lo, hi = float(vals.min()), float(vals.max())
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    density, edges = np.histogram(vals, bins=bins, range=(lo, hi), density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = float(edges[1] - edges[0])

    if kde_bandwidth is not None:
        bandwidth = float(kde_bandwidth)
        if not (bandwidth > 0.0):
            raise ValueError(f"kde bandwidth must be > 0, got {bandwidth}")
    else:
        sigma = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
        bandwidth = sigma * vals.size ** (-0.2)
        if not (bandwidth > 0.0):
            bandwidth = 1.0
    grid = np.linspace(vals.min() - 3.0 * bandwidth, vals.max() + 3.0 * bandwidth, KDE_POINTS)
    z = (grid[:, None] - vals[None, :]) / bandwidth
    kde = np.exp(-0.5 * z * z).mean(axis=1) / (bandwidth * np.sqrt(2.0 * np.pi))

    return Distribution(
        hist_x=centers,
        hist_density=density,
        bin_width=width,
        kde_x=grid,
        kde_density=kde,
        bandwidth=bandwidth,
    )
