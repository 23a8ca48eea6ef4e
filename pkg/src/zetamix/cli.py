"""Command-line client for the augmentation service.

Commands marshal local files into service requests and write the responses
back to disk; all computation happens behind the service API (in-process by
default, remote with --server).  Exit codes: 0 success, 2 usage error,
3 file/payload format error, 4 numeric failure.
"""

from __future__ import annotations

import functools
import json
import sys

import click
import numpy as np

from .client import ServiceClient
from .errors import FormatError, NumericError
from .manifolds import SHAPES
from .service.schemas import TensorPayload
from .tensor_io import read_labels, read_tensor, write_labels, write_tensor

FEATURES_SUFFIX = "_features.tensor"
SOFT_LABELS_SUFFIX = "_soft_labels.tensor"
WEIGHTS_SUFFIX = "_weights.tensor"
LABELS_SUFFIX = "_labels.csv"

EXIT_FORMAT = 3
EXIT_NUMERIC = 4


def service_command(fn):
    """Map service/library errors onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FormatError as exc:
            click.echo(f"format error: {exc}", err=True)
            sys.exit(EXIT_FORMAT)
        except NumericError as exc:
            click.echo(f"numeric error: {exc}", err=True)
            sys.exit(EXIT_NUMERIC)
        except OSError as exc:
            raise click.UsageError(str(exc))
        except ValueError as exc:
            raise click.UsageError(str(exc))

    return wrapper


def _payload(arr: np.ndarray) -> dict:
    return TensorPayload.from_array(arr).model_dump()


def _array(payload: dict) -> np.ndarray:
    return TensorPayload(**payload).to_array()


def _write_xy_csv(path: str, header: str, xs, ys) -> None:
    lines = [header]
    lines += [f"{float(x):.12g},{float(y):.12g}" for x, y in zip(xs, ys)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_distribution(prefix: str, name: str, dist: dict | None) -> None:
    if dist is None:
        return
    _write_xy_csv(f"{prefix}_{name}_hist.csv", "x,density", dist["hist_x"], dist["hist_density"])
    _write_xy_csv(f"{prefix}_{name}_kde.csv", "x,density", dist["kde_x"], dist["kde_density"])


@click.group()
@click.option(
    "--server",
    envvar="ZETAMIX_SERVER",
    default=None,
    help="Base URL of a running zetamix service; in-process when omitted.",
)
@click.pass_context
def main(ctx, server):
    """Data augmentation by multi-sample convex combination, plus the
    measurement tools around it (synthetic manifolds, local intrinsic
    dimension, label metrics, kernel benchmark)."""
    ctx.obj = {"server": server}


def _client(ctx) -> ServiceClient:
    client = ctx.obj.get("client")
    if client is None:
        client = ServiceClient(ctx.obj["server"])
        ctx.obj["client"] = client
    return client


@main.command()
@click.option("--shape", type=click.Choice(SHAPES), required=True)
@click.option("--n", type=int, required=True, help="Number of samples.")
@click.option("--noise", type=float, default=0.0, show_default=True, help="Gaussian noise sigma.")
@click.option("--turns", type=float, default=6.0, show_default=True, help="Helix turns.")
@click.option("--seed", type=int, required=True)
@click.option("--out", required=True, help="Output file prefix.")
@click.pass_context
@service_command
def gen(ctx, shape, n, noise, turns, seed, out):
    """Generate a synthetic dataset and write features + labels files."""
    resp = _client(ctx).post(
        "/generate",
        {"shape": shape, "n": n, "noise_sigma": noise, "seed": seed, "turns": turns},
    )
    write_tensor(out + FEATURES_SUFFIX, _array(resp["features"]))
    write_labels(out + LABELS_SUFFIX, np.asarray(resp["labels"], dtype=np.int64))
    click.echo(json.dumps(resp["generator_params"]))


@main.command()
@click.option("--input", "input_path", required=True, help="Features tensor file.")
@click.option("--labels", "labels_path", default=None, help="Integer labels CSV.")
@click.option("--soft-labels", "soft_path", default=None, help="Soft-label tensor file.")
@click.option("--method", type=click.Choice(["zeta", "mixup"]), required=True)
@click.option("--gamma", type=float, default=None, help="Weight decay exponent (zeta).")
@click.option("--alpha", type=float, default=1.0, show_default=True, help="Beta(alpha, alpha) (mixup).")
@click.option("--classes", "n_classes", type=int, default=None, help="Class count override.")
@click.option("--seed", type=int, required=True)
@click.option("--out", required=True, help="Output file prefix.")
@click.pass_context
@service_command
def augment(ctx, input_path, labels_path, soft_path, method, gamma, alpha, n_classes, seed, out):
    """Augment a batch; writes features, soft labels, and mixing weights."""
    if (labels_path is None) == (soft_path is None):
        raise click.UsageError("provide exactly one of --labels or --soft-labels")
    request = {
        "features": _payload(read_tensor(input_path)),
        "method": method,
        "alpha": alpha,
        "seed": seed,
    }
    if gamma is not None:
        request["gamma"] = gamma
    if n_classes is not None:
        request["n_classes"] = n_classes
    if labels_path is not None:
        request["labels"] = [int(v) for v in read_labels(labels_path)]
    else:
        request["soft_labels"] = _payload(read_tensor(soft_path))
    resp = _client(ctx).post("/augment", request)
    for message in resp.get("warnings", []):
        click.echo(f"warning: {message}", err=True)
    write_tensor(out + FEATURES_SUFFIX, _array(resp["features"]))
    write_tensor(out + SOFT_LABELS_SUFFIX, _array(resp["soft_labels"]))
    write_tensor(out + WEIGHTS_SUFFIX, _array(resp["weights"]))
    click.echo(f"augmented {resp['features']['shape'][0]} samples -> {out}*")


@main.command(name="id")
@click.option("--input", "input_path", required=True, help="Points tensor file.")
@click.option("--k", type=int, required=True, help="Neighbourhood size.")
@click.option("--threshold", type=float, default=0.05, show_default=True,
              help="Eigenvalue significance fraction.")
@click.option("--out", required=True, help="Output file prefix.")
@click.pass_context
@service_command
def local_id(ctx, input_path, k, threshold, out):
    """Estimate per-point local intrinsic dimension; writes a JSON summary."""
    resp = _client(ctx).post(
        "/intrinsic-dim",
        {"points": _payload(read_tensor(input_path)), "k": k, "eigen_threshold": threshold},
    )
    with open(out + "_id.json", "w", encoding="utf-8") as fh:
        json.dump(resp, fh)
        fh.write("\n")
    brief = {key: resp[key] for key in ("k", "threshold", "mean", "std", "n_degenerate")}
    click.echo(json.dumps(brief))


@main.command(name="eval")
@click.option("--oracle", "oracle_path", required=True, help="Reference prediction tensor (N x K).")
@click.option("--soft-labels", "soft_path", required=True, help="Soft-label tensor (N x K).")
@click.option("--bins", type=int, default=50, show_default=True)
@click.option("--kde-bandwidth", type=float, default=None)
@click.option("--entropy-filter", type=float, default=None,
              help="Restrict the cross-entropy export to rows with entropy below this.")
@click.option("--out", required=True, help="Output file prefix.")
@click.pass_context
@service_command
def eval_metrics(ctx, oracle_path, soft_path, bins, kde_bandwidth, entropy_filter, out):
    """Realism/label-correctness metrics; writes per-sample and distribution CSVs."""
    request = {
        "oracle_probs": _payload(read_tensor(oracle_path)),
        "soft_labels": _payload(read_tensor(soft_path)),
        "bins": bins,
    }
    if kde_bandwidth is not None:
        request["kde_bandwidth"] = kde_bandwidth
    if entropy_filter is not None:
        request["entropy_filter"] = entropy_filter
    resp = _client(ctx).post("/evaluate", request)

    lines = ["index,entropy,cross_entropy"]
    for i, (h, ce) in enumerate(zip(resp["entropy"], resp["cross_entropy"])):
        lines.append(f"{i},{h:.12g},{ce:.12g}")
    with open(out + "_metrics.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    _write_distribution(out, "entropy", resp["entropy_dist"])
    _write_distribution(out, "ce", resp["ce_dist"])
    click.echo(json.dumps({
        "rows": len(resp["entropy"]),
        "ce_rows_exported": resp["n_ce_exported"],
    }))


@main.command()
@click.option("--batch", type=int, default=32, show_default=True)
@click.option("--dims", default="3x224x224", show_default=True,
              help="Per-sample dimensions, flattened before the kernel.")
@click.option("--iters", type=int, default=100, show_default=True)
@click.option("--warmup", type=int, default=5, show_default=True)
@click.option("--gamma", type=float, default=2.8, show_default=True)
@click.option("--alpha", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", default=None, help="Optional output file prefix.")
@click.pass_context
@service_command
def bench(ctx, batch, dims, iters, warmup, gamma, alpha, seed, out):
    """Time both augmentation kernels on identical random data."""
    resp = _client(ctx).post(
        "/benchmark",
        {
            "batch": batch,
            "dims": dims,
            "iters": iters,
            "warmup": warmup,
            "gamma": gamma,
            "alpha": alpha,
            "seed": seed,
        },
    )
    text = json.dumps(resp, indent=2)
    if out:
        with open(out + "_bench.json", "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    click.echo(text)


@main.command()
@click.option("--soft-labels", "soft_path", default=None, help="Soft-label tensor file.")
@click.option("--weights", "weights_path", default=None, help="Weight tensor file.")
@click.pass_context
@service_command
def validate(ctx, soft_path, weights_path):
    """Re-check augmentation outputs (row-stochastic weights, label sums)."""
    if soft_path is None and weights_path is None:
        raise click.UsageError("provide --soft-labels and/or --weights")
    request = {}
    if soft_path is not None:
        request["soft_labels"] = _payload(read_tensor(soft_path))
    if weights_path is not None:
        request["weights"] = _payload(read_tensor(weights_path))
    resp = _client(ctx).post("/validate", request)
    click.echo(json.dumps(resp, indent=2))
    if not resp["valid"]:
        sys.exit(EXIT_NUMERIC)


@main.command(name="gamma-min")
@click.option("--tolerance", type=float, default=1e-8, show_default=True)
@click.pass_context
@service_command
def gamma_min(ctx, tolerance):
    """Solve for the smallest exponent with a dominant mixing weight."""
    resp = _client(ctx).get("/gamma-min", params={"tolerance": tolerance})
    click.echo(json.dumps(resp))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the augmentation service with uvicorn."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
