"""Shared test utilities."""

import numpy as np

from zetamix.mixing import mixup_batch, zeta_mixup_batch


def plane_points_r12(rows, cols, seed, jitter=0.2):
    """Well-spread 2-D plane sample embedded isometrically in R^12: a unit
    grid with positional jitter, mapped through an orthonormal basis.  Every
    k >= 2 neighbourhood is genuinely two-dimensional, so the local
    dimension is 2 everywhere.
    """
    rng = np.random.default_rng(seed)
    grid = np.stack(
        np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij"), axis=-1
    ).reshape(-1, 2).astype(np.float64)
    grid += rng.uniform(-jitter, jitter, grid.shape)
    basis, _ = np.linalg.qr(rng.normal(size=(12, 2)))
    return grid @ basis.T


def augment_dataset_batchwise(
    features,
    soft_labels,
    method,
    *,
    rng,
    batch_size=128,
    gamma=None,
    alpha=1.0,
):
    """Augment a whole dataset the way a training loop would: shuffle, split
    into batches, and run one augmentation per batch (its own weight matrix
    or its own lambda draw).  Returns (features, soft_labels) of the same
    shape as the inputs.
    """
    n = features.shape[0]
    order = rng.permutation(n)
    out_x = np.empty_like(features)
    out_y = np.empty_like(soft_labels)
    for start in range(0, n, batch_size):
        idx = order[start:start + batch_size]
        if method == "zeta":
            batch = zeta_mixup_batch(features[idx], soft_labels[idx], gamma, rng=rng)
        elif method == "mixup":
            batch = mixup_batch(features[idx], soft_labels[idx], alpha, rng=rng)
        else:
            raise ValueError(f"unknown method {method!r}")
        out_x[idx] = batch.features
        out_y[idx] = batch.soft_labels
    return out_x, out_y
