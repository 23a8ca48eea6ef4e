"""Sample-weight generation from a randomly permuted, normalized p-series.

A batch of N samples is mixed with weights

    w_i = s_i^(-gamma) / C,    C = sum_{j=1..N} j^(-gamma),

where ``s`` is a uniform random permutation of the ranks 1..N and C is the
N-truncated zeta value that makes the weights a probability vector.  For
gamma >= GAMMA_MIN the largest weight strictly dominates the sum of all the
others, so every synthetic sample stays close to one original sample.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

#: Smallest gamma for which the top-ranked weight exceeds the sum of all
#: other weights for every batch size (the root of zeta(g) = 2).
GAMMA_MIN = 1.72865


class LowGammaWarning(UserWarning):
    """gamma is below GAMMA_MIN: the dominant-weight guarantee is off."""


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise ValueError(f"gamma must be finite, got {gamma!r}")
    return gamma


def _warn_if_low(gamma: float) -> None:
    if gamma < GAMMA_MIN:
        warnings.warn(
            f"gamma={gamma:g} is below {GAMMA_MIN}; the largest weight is "
            "not guaranteed to dominate the others",
            LowGammaWarning,
            stacklevel=3,
        )


def truncated_zeta(gamma: float, n: int) -> float:
    """Partial p-series sum 1^(-gamma) + 2^(-gamma) + ... + n^(-gamma).

    Computed in float64.  Strictly positive for any finite gamma.
    """
    gamma = _check_gamma(gamma)
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    terms = np.power(np.arange(1, n + 1, dtype=np.float64), -gamma)
    return float(terms.sum())


_TAIL_TERMS = 1_000_000
_tail_base: np.ndarray | None = None


def zeta_tail_corrected(gamma: float, terms: int = _TAIL_TERMS) -> float:
    """Zeta value for gamma > 1: truncated sum plus the integral tail.

    The remainder past ``terms`` is approximated by
    integral_{terms..inf} x^(-gamma) dx = terms^(1-gamma) / (gamma - 1),
    accurate to O(terms^(-gamma)) which is far below 1e-9 here.
    """
    gamma = _check_gamma(gamma)
    if gamma <= 1.0:
        raise ValueError(f"gamma must be > 1 for a convergent series, got {gamma}")
    global _tail_base
    if terms == _TAIL_TERMS:
        if _tail_base is None:
            _tail_base = np.arange(1, _TAIL_TERMS + 1, dtype=np.float64)
        base = _tail_base
    else:
        base = np.arange(1, int(terms) + 1, dtype=np.float64)
    head = float(np.power(base, -gamma).sum())
    tail = float(terms) ** (1.0 - gamma) / (gamma - 1.0)
    return head + tail


def solve_gamma_min(tolerance: float = 1e-8) -> float:
    """Solve zeta(gamma) = 2 by bisection on [1.01, 3.0].

    zeta is strictly decreasing on the bracket, with zeta(1.01) >> 2 and
    zeta(3.0) < 2, so the bisection is safe.  The root is 1.72865 to five
    decimals.
    """
    tolerance = float(tolerance)
    if not (tolerance > 0.0):
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    lo, hi = 1.01, 3.0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if zeta_tail_corrected(mid) > 2.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_ordering(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random permutation of the ranks 1..n (Fisher-Yates).

    Deterministic for a generator with a fixed seed.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return rng.permutation(np.arange(1, n + 1, dtype=np.int64))


def _check_ordering(ordering: np.ndarray) -> np.ndarray:
    ranks = np.asarray(ordering, dtype=np.int64)
    if ranks.ndim != 1 or ranks.size < 1:
        raise ValueError("ordering must be a non-empty 1-D sequence of ranks")
    n = ranks.size
    if ranks.min() < 1 or ranks.max() > n:
        raise ValueError("ordering must be a permutation of 1..n")
    if np.any(np.bincount(ranks - 1, minlength=n) != 1):
        raise ValueError("ordering must be a permutation of 1..n")
    return ranks


def zeta_weights(gamma: float, ordering: np.ndarray) -> np.ndarray:
    """Weight vector w_i = ranks_i^(-gamma) / C for a given rank ordering.

    All entries are positive and sum to 1 (within float64 rounding).
    """
    gamma = _check_gamma(gamma)
    ranks = _check_ordering(ordering)
    _warn_if_low(gamma)
    w = np.power(ranks.astype(np.float64), -gamma)
    return w / truncated_zeta(gamma, ranks.size)


def gamma_from_lambda(lam: float) -> float:
    """gamma that makes a two-sample weight vector equal [lam, 1 - lam].

    Inverts lam = 1 / (1 + 2^(-gamma)):  gamma = log2(lam / (1 - lam)).
    Negative for lam < 0.5; such values are legal but flagged downstream as
    below GAMMA_MIN.
    """
    lam = float(lam)
    if not (0.0 < lam < 1.0):
        raise ValueError(f"lambda must be in (0, 1), got {lam}")
    return math.log2(lam / (1.0 - lam))


def weight_matrix(n: int, gamma: float, rng: np.random.Generator) -> np.ndarray:
    """n x n matrix whose rows are weight vectors under independent orderings.

    Row p equals ``zeta_weights(gamma, s_p)`` for a fresh uniform permutation
    s_p, realized as a gather of the pre-normalized per-rank values so that
    large batches stay cheap.  Deterministic for a fixed seed.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gamma = _check_gamma(gamma)
    _warn_if_low(gamma)
    values = np.power(np.arange(1, n + 1, dtype=np.float64), -gamma)
    values /= truncated_zeta(gamma, n)
    perms = rng.permuted(
        np.tile(np.arange(n, dtype=np.int32), (n, 1)), axis=1
    )
    return values[perms]


def validate_weight_matrix(weights: np.ndarray, atol: float = 1e-9) -> list[str]:
    """Row-stochasticity check; returns a list of human-readable failures."""
    w = np.asarray(weights, dtype=np.float64)
    problems = []
    if w.ndim != 2:
        return [f"weights must be 2-D, got shape {w.shape}"]
    if not np.all(np.isfinite(w)):
        problems.append("weights contain non-finite entries")
    if np.any(w < 0.0):
        problems.append(f"weights contain negative entries (min {w.min():.3e})")
    sums = w.sum(axis=1)
    worst = float(np.abs(sums - 1.0).max()) if sums.size else 0.0
    if worst > atol:
        problems.append(f"row sums deviate from 1 by up to {worst:.3e} (> {atol:g})")
    return problems
