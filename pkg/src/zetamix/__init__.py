"""Multi-sample mixup augmentation with p-series weights.

Core library (weights, mixing, synthetic manifolds, intrinsic-dimension
estimation, label metrics, tensor files) plus a FastAPI service and a thin
CLI client on top.
"""

__version__ = "0.1.0"

from .benchmark import BenchReport, run_benchmark
from .errors import FormatError, NumericError
from .intrinsic_dim import IdSummary, dataset_local_id, knn, local_pca_id
from .label_metrics import (
    Distribution,
    cross_entropy,
    cross_entropy_rows,
    entropy,
    entropy_rows,
    export_distribution,
)
from .manifolds import SyntheticDataset, gen_crescents, gen_helix, gen_spirals, make_dataset
from .mixing import (
    AugmentedBatch,
    mixup_batch,
    mixup_pair,
    one_hot,
    validate_artifacts,
    zeta_mixup_batch,
)
from .tensor_io import read_labels, read_tensor, write_labels, write_tensor
from .weights import (
    GAMMA_MIN,
    LowGammaWarning,
    gamma_from_lambda,
    sample_ordering,
    solve_gamma_min,
    truncated_zeta,
    weight_matrix,
    zeta_tail_corrected,
    zeta_weights,
)

__all__ = [
    "AugmentedBatch",
    "BenchReport",
    "Distribution",
    "FormatError",
    "GAMMA_MIN",
    "IdSummary",
    "LowGammaWarning",
    "NumericError",
    "SyntheticDataset",
    "cross_entropy",
    "cross_entropy_rows",
    "dataset_local_id",
    "entropy",
    "entropy_rows",
    "export_distribution",
    "gamma_from_lambda",
    "gen_crescents",
    "gen_helix",
    "gen_spirals",
    "knn",
    "local_pca_id",
    "make_dataset",
    "mixup_batch",
    "mixup_pair",
    "one_hot",
    "read_labels",
    "read_tensor",
    "run_benchmark",
    "sample_ordering",
    "solve_gamma_min",
    "truncated_zeta",
    "validate_artifacts",
    "weight_matrix",
    "write_labels",
    "write_tensor",
    "zeta_mixup_batch",
    "zeta_tail_corrected",
    "zeta_weights",
]
