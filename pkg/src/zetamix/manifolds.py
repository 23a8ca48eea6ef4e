"""Synthetic datasets with known low-dimensional structure.

Three families of point clouds used to probe augmentation behaviour:
two-class crescents and spirals in the plane, and a one-dimensional helix
embedded in R^3 or (as a harmonic curve) in R^12.  Generation is
deterministic per (shape, n, noise, seed) and the exact parametrization is
recorded in ``generator_params``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPIRAL_RADIUS_RATE = 0.5     # r = rate * theta
SPIRAL_THETA_RANGE = (np.pi / 2.0, 3.0 * np.pi)
HELIX_PITCH = 0.15           # z climb per radian for the 3-D helix
HELIX3_TURNS = 6.0
HARMONIC_FREQS = 6           # R^12 curve uses cos/sin of k*t, k = 1..6


@dataclass
class SyntheticDataset:
    features: np.ndarray            # (n, d) float64
    labels: np.ndarray              # (n,) int64
    generator_params: dict = field(default_factory=dict)


def _noise(rng: np.random.Generator, sigma: float, shape) -> np.ndarray:
    if sigma < 0.0:
        raise ValueError(f"noise sigma must be >= 0, got {sigma}")
    if sigma == 0.0:
        return np.zeros(shape)
    return rng.normal(0.0, sigma, shape)


def _check_even(n: int) -> int:
    n = int(n)
    if n < 2 or n % 2 != 0:
        raise ValueError(f"two-class generators need an even n >= 2, got {n}")
    return n


def gen_crescents(n: int, noise_sigma: float, seed: int) -> SyntheticDataset:
    """Two interleaving half-circle arcs of unit radius, n/2 points each.

    Class 0 lies on the upper unit half-circle; class 1 is the same arc
    shifted by (1, -0.5) and reflected about the x-axis, i.e. centred at
    (1, 0.5) and opening upward into the first arc.
    """
    n = _check_even(n)
    rng = np.random.default_rng(seed)
    half = n // 2
    t0 = rng.uniform(0.0, np.pi, half)
    t1 = rng.uniform(0.0, np.pi, half)
    arc0 = np.column_stack([np.cos(t0), np.sin(t0)])
    arc1 = np.column_stack([np.cos(t1) + 1.0, 0.5 - np.sin(t1)])
    features = np.vstack([arc0, arc1]) + _noise(rng, noise_sigma, (n, 2))
    labels = np.repeat(np.array([0, 1], dtype=np.int64), half)
    params = {
        "shape": "crescents",
        "n": n,
        "noise_sigma": float(noise_sigma),
        "seed": int(seed),
        "ambient_dim": 2,
        "radius": 1.0,
        "arc_centers": [[0.0, 0.0], [1.0, 0.5]],
    }
    return SyntheticDataset(features, labels, params)


def gen_spirals(n: int, noise_sigma: float, seed: int) -> SyntheticDataset:
    """Two Archimedean spiral arms r = a*theta, offset by pi in phase.

    theta is sampled uniformly over [pi/2, 3*pi]; the second arm places its
    points at polar angle theta + pi, so the arms never touch.
    """
    n = _check_even(n)
    rng = np.random.default_rng(seed)
    half = n // 2
    a = SPIRAL_RADIUS_RATE
    lo, hi = SPIRAL_THETA_RANGE
    th0 = rng.uniform(lo, hi, half)
    th1 = rng.uniform(lo, hi, half)
    arm0 = np.column_stack([a * th0 * np.cos(th0), a * th0 * np.sin(th0)])
    arm1 = np.column_stack([
        a * th1 * np.cos(th1 + np.pi),
        a * th1 * np.sin(th1 + np.pi),
    ])
    features = np.vstack([arm0, arm1]) + _noise(rng, noise_sigma, (n, 2))
    labels = np.repeat(np.array([0, 1], dtype=np.int64), half)
    params = {
        "shape": "spirals",
        "n": n,
        "noise_sigma": float(noise_sigma),
        "seed": int(seed),
        "ambient_dim": 2,
        "radius_rate": a,
        "theta_range": [float(lo), float(hi)],
        "phase_offset": float(np.pi),
    }
    return SyntheticDataset(features, labels, params)


def gen_helix(
    n: int,
    ambient_dim: int = 3,
    turns: float = HELIX3_TURNS,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> SyntheticDataset:
    """One-dimensional helix sampled at t ~ U[0, 2*pi*turns].

    ambient_dim 3 gives the circular helix (cos t, sin t, pitch*t);
    ambient_dim 12 gives the harmonic curve (cos t, sin t, cos 2t, sin 2t,
    ..., cos 6t, sin 6t), still a 1-D curve in a 12-D ambient space.
    Single-class: all labels are 0.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if ambient_dim not in (3, 12):
        raise ValueError(f"ambient_dim must be 3 or 12, got {ambient_dim}")
    if not (float(turns) > 0.0):
        raise ValueError(f"turns must be > 0, got {turns}")
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 2.0 * np.pi * float(turns), n)
    if ambient_dim == 3:
        features = np.column_stack([np.cos(t), np.sin(t), HELIX_PITCH * t])
    else:
        cols = []
        for k in range(1, HARMONIC_FREQS + 1):
            cols.append(np.cos(k * t))
            cols.append(np.sin(k * t))
        features = np.column_stack(cols)
    features = features + _noise(rng, noise_sigma, features.shape)
    labels = np.zeros(n, dtype=np.int64)
    params = {
        "shape": f"helix{ambient_dim}",
        "n": n,
        "noise_sigma": float(noise_sigma),
        "seed": int(seed),
        "ambient_dim": int(ambient_dim),
        "turns": float(turns),
        "pitch": HELIX_PITCH if ambient_dim == 3 else None,
        "harmonic_freqs": None if ambient_dim == 3 else HARMONIC_FREQS,
    }
    return SyntheticDataset(features, labels, params)


SHAPES = ("crescents", "spirals", "helix3", "helix12")


def make_dataset(
    shape: str,
    n: int,
    noise_sigma: float,
    seed: int,
    turns: float = HELIX3_TURNS,
) -> SyntheticDataset:
    """Dispatch on a shape name from :data:`SHAPES`."""
    if shape == "crescents":
        return gen_crescents(n, noise_sigma, seed)
    if shape == "spirals":
        return gen_spirals(n, noise_sigma, seed)
    if shape == "helix3":
        return gen_helix(n, 3, turns, noise_sigma, seed)
    if shape == "helix12":
        return gen_helix(n, 12, turns, noise_sigma, seed)
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")
