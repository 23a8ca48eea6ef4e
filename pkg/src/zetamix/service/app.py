"""FastAPI application exposing the augmentation toolkit.

Every endpoint is stateless: requests carry all data (seeds included), so
the service can sit behind multiple training jobs at once.  Errors map to a
stable body shape ``{"error": kind, "message": ...}`` with kind one of
``usage``, ``format``, ``numeric``.
"""

from __future__ import annotations

import warnings

import numpy as np
from fastapi import FastAPI, Query
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..benchmark import run_benchmark
from ..errors import FormatError, NumericError
from ..intrinsic_dim import dataset_local_id
from ..label_metrics import cross_entropy_rows, entropy_rows, export_distribution
from ..manifolds import make_dataset
from ..mixing import mixup_batch, one_hot, validate_artifacts, validate_soft_labels, zeta_mixup_batch
from ..weights import solve_gamma_min, zeta_tail_corrected
from .schemas import (
    AugmentRequest,
    AugmentResponse,
    BenchReportModel,
    BenchRequest,
    BenchResponse,
    CheckResult,
    DistributionPayload,
    EvalRequest,
    EvalResponse,
    GammaMinResponse,
    GenerateRequest,
    GenerateResponse,
    IdRequest,
    IdResponse,
    TensorPayload,
    ValidateRequest,
    ValidateResponse,
)


def _error_response(kind: str, message: str, status: int) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": kind, "message": message})


def _dist_payload(dist) -> DistributionPayload:
    return DistributionPayload(
        hist_x=[float(v) for v in dist.hist_x],
        hist_density=[float(v) for v in dist.hist_density],
        bin_width=dist.bin_width,
        kde_x=[float(v) for v in dist.kde_x],
        kde_density=[float(v) for v in dist.kde_density],
        bandwidth=dist.bandwidth,
    )


def _parse_dims(dims: str) -> tuple[int, ...]:
    try:
        parsed = tuple(int(part) for part in dims.lower().split("x"))
    except ValueError:
        raise ValueError(f"dims must look like '3x224x224', got {dims!r}")
    if not parsed or any(d < 1 for d in parsed):
        raise ValueError(f"dims must be positive integers, got {dims!r}")
    return parsed


def create_app() -> FastAPI:
    app = FastAPI(title="zetamix", version=__version__)

    @app.exception_handler(RequestValidationError)
    async def _on_validation(_, exc: RequestValidationError):
        return _error_response("usage", str(exc.errors()), 422)

    @app.exception_handler(ValueError)
    async def _on_value_error(_, exc: ValueError):
        return _error_response("usage", str(exc), 422)

    @app.exception_handler(FormatError)
    async def _on_format_error(_, exc: FormatError):
        return _error_response("format", str(exc), 400)

    @app.exception_handler(NumericError)
    async def _on_numeric_error(_, exc: NumericError):
        return _error_response("numeric", str(exc), 422)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "service": "zetamix", "version": __version__}

    @app.get("/gamma-min", response_model=GammaMinResponse)
    def gamma_min(tolerance: float = Query(default=1e-8)):
        root = solve_gamma_min(tolerance)
        return GammaMinResponse(
            gamma_min=root, zeta_value=zeta_tail_corrected(root), tolerance=tolerance
        )

    @app.post("/generate", response_model=GenerateResponse)
    def generate(req: GenerateRequest):
        ds = make_dataset(req.shape, req.n, req.noise_sigma, req.seed, req.turns)
        return GenerateResponse(
            features=TensorPayload.from_array(ds.features),
            labels=[int(v) for v in ds.labels],
            generator_params=ds.generator_params,
        )

    @app.post("/augment", response_model=AugmentResponse)
    def augment(req: AugmentRequest):
        features = req.features.to_array()
        if features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {features.shape}")

        if (req.labels is None) == (req.soft_labels is None):
            raise ValueError("provide exactly one of labels or soft_labels")
        if req.labels is not None:
            labels = np.asarray(req.labels, dtype=np.int64)
            if labels.size and labels.min() < 0:
                raise ValueError("labels must be non-negative")
            inferred = int(labels.max()) + 1 if labels.size else 1
            k = req.n_classes if req.n_classes is not None else inferred
            soft = one_hot(labels, k)
        else:
            soft = req.soft_labels.to_array()
            problems = validate_soft_labels(soft)
            if problems:
                raise ValueError("; ".join(problems))
        if soft.shape[0] != features.shape[0]:
            raise FormatError(
                f"row-count mismatch: {features.shape[0]} feature rows vs "
                f"{soft.shape[0]} label rows"
            )

        rng = np.random.default_rng(req.seed)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if req.method == "zeta":
                if req.gamma is None:
                    raise ValueError("gamma is required for method 'zeta'")
                batch = zeta_mixup_batch(features, soft, req.gamma, rng=rng)
            else:
                batch = mixup_batch(features, soft, req.alpha, rng=rng)
        return AugmentResponse(
            features=TensorPayload.from_array(batch.features),
            soft_labels=TensorPayload.from_array(batch.soft_labels),
            weights=TensorPayload.from_array(batch.weights_used),
            warnings=[str(w.message) for w in caught],
        )

    @app.post("/intrinsic-dim", response_model=IdResponse)
    def intrinsic_dim(req: IdRequest):
        points = req.points.to_array()
        summary = dataset_local_id(points, req.k, req.eigen_threshold)
        return IdResponse(**summary.to_dict())

    @app.post("/evaluate", response_model=EvalResponse)
    def evaluate(req: EvalRequest):
        oracle = req.oracle_probs.to_array()
        soft = req.soft_labels.to_array()
        if oracle.ndim != 2 or soft.ndim != 2:
            raise ValueError("prediction and soft-label tensors must be 2-D")
        if oracle.shape != soft.shape:
            raise FormatError(
                f"shape mismatch: predictions {list(oracle.shape)} vs "
                f"soft labels {list(soft.shape)}"
            )
        h = entropy_rows(oracle)
        ce = cross_entropy_rows(oracle, soft)
        entropy_dist = export_distribution(h, req.bins, req.kde_bandwidth)
        if req.entropy_filter is not None:
            ce_export = ce[h < req.entropy_filter]
        else:
            ce_export = ce
        ce_dist = (
            _dist_payload(export_distribution(ce_export, req.bins, req.kde_bandwidth))
            if ce_export.size
            else None
        )
        return EvalResponse(
            entropy=[float(v) for v in h],
            cross_entropy=[float(v) for v in ce],
            entropy_dist=_dist_payload(entropy_dist),
            ce_dist=ce_dist,
            n_ce_exported=int(ce_export.size),
        )

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest):
        soft = req.soft_labels.to_array() if req.soft_labels is not None else None
        weights = req.weights.to_array() if req.weights is not None else None
        checks = validate_artifacts(soft, weights)
        return ValidateResponse(
            valid=all(ok for _, ok, _ in checks),
            checks=[CheckResult(name=n, passed=ok, detail=d) for n, ok, d in checks],
        )

    @app.post("/benchmark", response_model=BenchResponse)
    def benchmark(req: BenchRequest):
        result = run_benchmark(
            batch=req.batch,
            dims=_parse_dims(req.dims),
            iters=req.iters,
            warmup=req.warmup,
            seed=req.seed,
            gamma=req.gamma,
            alpha=req.alpha,
        )
        return BenchResponse(
            reports={
                name: BenchReportModel(**report.to_dict())
                for name, report in result["reports"].items()
            },
            ratio_median=result["ratio_median"],
        )

    return app
