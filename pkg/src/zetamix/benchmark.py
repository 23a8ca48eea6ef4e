"""Wall-clock comparison of the two augmentation kernels.

Both methods run on the same random float32 batch (images flattened to one
feature axis, matching how the kernels treat them).  The timed region covers
exactly one batch augmentation, including the per-batch weight/partner
draws; building the input data and the generators is not timed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .mixing import mixup_batch, one_hot, zeta_mixup_batch

DEFAULT_BATCH = 32
DEFAULT_DIMS = (3, 224, 224)
DEFAULT_CLASSES = 10


@dataclass
class BenchReport:
    method: str
    batch_shape: list[int]
    iterations: int
    warmup: int
    times_us: list[float]
    median_us: float
    mean_us: float
    std_us: float

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "batch_shape": self.batch_shape,
            "iterations": self.iterations,
            "warmup": self.warmup,
            "times_us": self.times_us,
            "median_us": self.median_us,
            "mean_us": self.mean_us,
            "std_us": self.std_us,
        }


def _time_kernel(fn, iters: int, warmup: int) -> list[float]:
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(iters):
        start = time.perf_counter_ns()
        fn()
        times.append((time.perf_counter_ns() - start) / 1000.0)
    return times


def _report(method: str, batch_shape: list[int], iters: int, warmup: int,
            times_us: list[float]) -> BenchReport:
    arr = np.asarray(times_us)
    return BenchReport(
        method=method,
        batch_shape=batch_shape,
        iterations=iters,
        warmup=warmup,
        times_us=[float(t) for t in times_us],
        median_us=float(np.median(arr)),
        mean_us=float(arr.mean()),
        std_us=float(arr.std()),
    )


def run_benchmark(
    batch: int = DEFAULT_BATCH,
    dims: tuple[int, ...] = DEFAULT_DIMS,
    iters: int = 100,
    warmup: int = 5,
    seed: int = 0,
    gamma: float = 2.8,
    alpha: float = 1.0,
    n_classes: int = DEFAULT_CLASSES,
) -> dict:
    """Time multi-sample mixing against pairwise mixing on identical data.

    Returns both reports plus the headline ratio of medians
    (multi-sample / pairwise).
    """
    batch = int(batch)
    iters = int(iters)
    warmup = int(warmup)
    if batch < 2:
        raise ValueError(f"batch must be >= 2, got {batch}")
    if iters < 10:
        raise ValueError(f"iters must be >= 10, got {iters}")
    if warmup < 3:
        raise ValueError(f"warmup must be >= 3, got {warmup}")
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"dims must be positive, got {dims}")
    feature_dim = int(np.prod(dims))

    data_rng = np.random.default_rng(seed)
    x = data_rng.standard_normal((batch, feature_dim), dtype=np.float32)
    y = one_hot(data_rng.integers(0, n_classes, batch), n_classes)
    batch_shape = [batch, *dims]

    zeta_rng = np.random.default_rng(seed + 1)
    mixup_rng = np.random.default_rng(seed + 2)
    zeta_times = _time_kernel(
        lambda: zeta_mixup_batch(x, y, gamma, rng=zeta_rng), iters, warmup
    )
    mixup_times = _time_kernel(
        lambda: mixup_batch(x, y, alpha, rng=mixup_rng), iters, warmup
    )

    zeta_report = _report("zeta_mixup", batch_shape, iters, warmup, zeta_times)
    mixup_report = _report("mixup", batch_shape, iters, warmup, mixup_times)
    return {
        "reports": {"zeta": zeta_report, "mixup": mixup_report},
        "ratio_median": zeta_report.median_us / mixup_report.median_us,
    }
