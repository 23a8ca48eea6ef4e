"""Request/response models for the augmentation service.

Tensors travel as base64-encoded raw little-endian bytes plus dtype/shape,
mirroring the on-disk tensor format, so clients can stream arrays without
JSON-number overhead.
"""

from __future__ import annotations

import base64
import binascii
import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..errors import FormatError
from ..tensor_io import DTYPES

_DTYPE_NAMES = {np.dtype("float32"): "f32", np.dtype("float64"): "f64"}


class TensorPayload(BaseModel):
    dtype: Literal["f32", "f64"]
    shape: list[int]
    data_b64: str

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "TensorPayload":
        arr = np.asarray(arr)
        name = _DTYPE_NAMES.get(arr.dtype)
        if name is None:
            arr = arr.astype(np.float64)
            name = "f64"
        data = np.ascontiguousarray(arr).astype(DTYPES[name], copy=False).tobytes()
        return cls(dtype=name, shape=list(arr.shape), data_b64=base64.b64encode(data).decode("ascii"))

    def to_array(self) -> np.ndarray:
        if any(s < 0 for s in self.shape):
            raise FormatError(f"negative entry in tensor shape {self.shape}")
        dtype = DTYPES[self.dtype]
        try:
            raw = base64.b64decode(self.data_b64, validate=True)
        except (binascii.Error, ValueError) as exc:
            raise FormatError(f"tensor payload is not valid base64: {exc}") from exc
        expected = int(math.prod(self.shape)) * dtype.itemsize
        if len(raw) != expected:
            raise FormatError(
                f"tensor payload has {len(raw)} bytes, expected {expected} "
                f"for shape {self.shape} ({self.dtype})"
            )
        return np.frombuffer(raw, dtype=dtype).reshape(self.shape).copy()


class GenerateRequest(BaseModel):
    shape: Literal["crescents", "spirals", "helix3", "helix12"]
    n: int = Field(ge=1)
    noise_sigma: float = Field(default=0.0, ge=0.0)
    seed: int
    turns: float = Field(default=6.0, gt=0.0)


class GenerateResponse(BaseModel):
    features: TensorPayload
    labels: list[int]
    generator_params: dict


class AugmentRequest(BaseModel):
    features: TensorPayload
    labels: Optional[list[int]] = None
    soft_labels: Optional[TensorPayload] = None
    method: Literal["zeta", "mixup"]
    gamma: Optional[float] = None
    alpha: float = Field(default=1.0, gt=0.0)
    seed: int
    n_classes: Optional[int] = Field(default=None, ge=1)


class AugmentResponse(BaseModel):
    features: TensorPayload
    soft_labels: TensorPayload
    weights: TensorPayload
    warnings: list[str] = []


class IdRequest(BaseModel):
    points: TensorPayload
    k: int = Field(ge=1)
    eigen_threshold: float = Field(default=0.05, gt=0.0, lt=1.0)


class IdResponse(BaseModel):
    k: int
    threshold: float
    mean: float
    std: float
    n_degenerate: int
    per_point: list[int]


class DistributionPayload(BaseModel):
    hist_x: list[float]
    hist_density: list[float]
    bin_width: float
    kde_x: list[float]
    kde_density: list[float]
    bandwidth: float


class EvalRequest(BaseModel):
    oracle_probs: TensorPayload
    soft_labels: TensorPayload
    entropy_filter: Optional[float] = None
    bins: int = Field(default=50, ge=1)
    kde_bandwidth: Optional[float] = Field(default=None, gt=0.0)


class EvalResponse(BaseModel):
    entropy: list[float]
    cross_entropy: list[float]
    entropy_dist: DistributionPayload
    ce_dist: Optional[DistributionPayload]
    n_ce_exported: int


class ValidateRequest(BaseModel):
    soft_labels: Optional[TensorPayload] = None
    weights: Optional[TensorPayload] = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str


class ValidateResponse(BaseModel):
    valid: bool
    checks: list[CheckResult]


class BenchRequest(BaseModel):
    batch: int = Field(default=32, ge=2)
    dims: str = "3x224x224"
    iters: int = 100
    warmup: int = 5
    seed: int
    gamma: float = 2.8
    alpha: float = Field(default=1.0, gt=0.0)


class BenchReportModel(BaseModel):
    method: str
    batch_shape: list[int]
    iterations: int
    warmup: int
    times_us: list[float]
    median_us: float
    mean_us: float
    std_us: float


class BenchResponse(BaseModel):
    reports: dict[str, BenchReportModel]
    ratio_median: float


class GammaMinResponse(BaseModel):
    gamma_min: float
    zeta_value: float
    tolerance: float
