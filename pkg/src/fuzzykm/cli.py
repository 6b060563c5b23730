"""Command-line harness: synthesize data, build distance matrices, run
fits and lambda sweeps, and compare against k-means and fuzzy c-means.

Every command is deterministic for fixed flags, input files and seed; the
only non-reproducible report field is wall_time_ms. Exit codes: 0 success,
1 usage or validation error, 2 numeric runtime error.
"""

import argparse
import csv
import hashlib
import io
import json
import sys
import time

import numpy as np

from .baselines import FcmConfig, fcm_fit, kmeans_fit
from .dataset import (
    gaussian_blobs,
    load_labels,
    load_matrix_csv,
    write_labels,
    write_matrix_csv,
)
from .distance import (
    butterworth_distance_matrix,
    default_kernel_width,
    default_omega,
    is_symmetric,
    kernel_distance_matrix,
    knn_distance_matrix,
    squared_euclidean_matrix,
    validate_distance_matrix,
    DistanceMatrix,
)
from .errors import NumericError, ValidationError
from .metrics import accuracy, nmi, purity_majority, purity_pairs
from .solver import SolverConfig, fit as solver_fit, hard_labels

class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the report contract
    reserves 2 for numeric failures, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_distance(args, x_or_s: np.ndarray) -> DistanceMatrix:
    kind = args.distance
    if kind == "euclidean":
        return squared_euclidean_matrix(x_or_s)
    if kind == "knn":
        return knn_distance_matrix(x_or_s, args.knn_k)
    if kind == "kernel":
        width = args.kernel_sigma
        if width is None:
            width = default_kernel_width(x_or_s)
        return kernel_distance_matrix(x_or_s, width)
    if kind == "butterworth":
        omega = args.omega
        if omega is None:
            omega = default_omega(x_or_s)
        return butterworth_distance_matrix(x_or_s, omega)
    if kind == "precomputed":
        validate_distance_matrix(x_or_s)
        return DistanceMatrix(np.asarray(x_or_s, dtype=float), "precomputed", {})
    raise ValidationError(f"unknown distance kind {kind!r}")


def _run_id(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _fit_report(args, dataset_desc: str, dist: DistanceMatrix, truth=None) -> dict:
    cfg = SolverConfig(lam=args.lam, tol=args.tol, max_iter=args.max_iter, seed=args.seed)
    start = time.perf_counter()
    state = solver_fit(dist, args.k, cfg)
    wall_ms = int(round((time.perf_counter() - start) * 1000))
    distance_kind = {"kind": dist.kind, "params": dist.params}
    report = {
        "run_id": _run_id(
            {
                "dataset": dataset_desc,
                "distance_kind": distance_kind,
                "k": args.k,
                "lambda": args.lam,
                "seed": args.seed,
                "tol": args.tol,
                "max_iter": args.max_iter,
            }
        ),
        "dataset": dataset_desc,
        "distance_kind": distance_kind,
        "k": args.k,
        "lambda": args.lam,
        "seed": args.seed,
        "iterations": state.n_iter,
        "converged": state.converged,
        "objective_final": state.objective_final,
    }
    if args.trace:
        report["objective_trace"] = [[t, v] for t, v in state.trace_pairs()]
    if truth is not None:
        pred = hard_labels(state.membership)
        report["acc"] = accuracy(truth, pred)
        report["nmi"] = nmi(truth, pred)
        report["purity_majority"] = purity_majority(truth, pred)
        report["purity_pairs"] = purity_pairs(truth, pred)
    report["wall_time_ms"] = wall_ms
    return report


def _flatten_row(report: dict) -> dict:
    row = {}
    for key, value in report.items():
        if key == "distance_kind":
            row["distance_kind"] = value["kind"]
            row["distance_params"] = json.dumps(value["params"], sort_keys=True)
        elif key == "objective_trace":
            row[key] = ";".join(f"{t}:{v!r}" for t, v in value)
        else:
            row[key] = value
    return row


def _csv_text(rows: list) -> str:
    header = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(payload, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = payload if isinstance(payload, list) else [payload]
        text = _csv_text([_flatten_row(r) for r in rows])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_input(args) -> np.ndarray:
    return load_matrix_csv(args.input, has_header=args.has_header)


def _load_truth(args):
    if getattr(args, "labels", None) is None:
        return None
    labels, _ = load_labels(args.labels)
    return labels


def cmd_synth(args) -> int:
    x, labels = gaussian_blobs(
        args.n_per, args.k, args.dim, args.sep, args.spread, args.seed
    )
    write_matrix_csv(x, args.out_data)
    write_labels(labels, args.out_labels)
    print(
        f"wrote {x.shape[0]}x{x.shape[1]} samples to {args.out_data} "
        f"and {labels.size} labels to {args.out_labels}"
    )
    return 0


def cmd_dist(args) -> int:
    x = _load_input(args)
    if args.distance == "precomputed":
        raise ValidationError("dist writes distance matrices; input is already one")
    dist = _build_distance(args, x)
    validate_distance_matrix(dist)
    write_matrix_csv(dist.values, args.output)
    n = dist.values.shape[0]
    print(
        f"wrote {n}x{n} {dist.kind} distance matrix to {args.output}; "
        f"params={json.dumps(dist.params, sort_keys=True)}; "
        f"symmetric={is_symmetric(dist)}; "
        f"max={dist.values.max():.6g}"
    )
    return 0


def cmd_fit(args) -> int:
    x = _load_input(args)
    dist = _build_distance(args, x)
    report = _fit_report(args, str(args.input), dist, truth=_load_truth(args))
    _emit(report, args)
    return 0


def cmd_sweep(args) -> int:
    grid = [float(v) for v in args.lambdas.split(",") if v.strip() != ""]
    if not grid:
        raise ValidationError("lambda grid is empty")
    x = _load_input(args)
    dist = _build_distance(args, x)
    truth = _load_truth(args)
    reports = []
    for lam in grid:
        args.lam = lam
        try:
            reports.append(_fit_report(args, str(args.input), dist, truth=truth))
        except NumericError as exc:
            reports.append(
                {
                    "dataset": str(args.input),
                    "distance_kind": {"kind": dist.kind, "params": dist.params},
                    "k": args.k,
                    "lambda": lam,
                    "seed": args.seed,
                    "error": str(exc),
                }
            )
    _emit(reports, args)
    return 0


def cmd_compare(args) -> int:
    x = _load_input(args)
    truth = _load_truth(args)
    if truth is None:
        raise ValidationError("compare requires --labels")
    if truth.size != x.shape[0]:
        raise ValidationError(
            f"label count {truth.size} does not match {x.shape[0]} samples"
        )
    rows = []
    for kind in [v for v in args.distances.split(",") if v.strip() != ""]:
        args.distance = kind
        dist = _build_distance(args, x)
        report = _fit_report(args, str(args.input), dist, truth=truth)
        report = {"method": f"fkm_{kind}", **report}
        rows.append(report)

    def scored(method, pred, objective, wall_ms, extra=None):
        row = {"method": method, "k": args.k, "seed": args.seed}
        if extra:
            row.update(extra)
        row.update(
            {
                "objective_final": objective,
                "acc": accuracy(truth, pred),
                "nmi": nmi(truth, pred),
                "purity_majority": purity_majority(truth, pred),
                "purity_pairs": purity_pairs(truth, pred),
                "wall_time_ms": wall_ms,
            }
        )
        return row

    start = time.perf_counter()
    km_labels, _, km_obj = kmeans_fit(x, args.k, seed=args.seed)
    km_ms = int(round((time.perf_counter() - start) * 1000))
    rows.append(scored("kmeans", km_labels, km_obj, km_ms))

    start = time.perf_counter()
    fcm_y, _ = fcm_fit(x, args.k, FcmConfig(seed=args.seed))
    fcm_ms = int(round((time.perf_counter() - start) * 1000))
    rows.append(scored("fcm", hard_labels(fcm_y), None, fcm_ms))
    _emit(rows, args)
    return 0


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input CSV path")
    p.add_argument(
        "--has-header", action="store_true", help="skip the first CSV line"
    )


def _add_distance_flags(p: argparse.ArgumentParser, kinds) -> None:
    p.add_argument("--distance", choices=kinds, default="euclidean")
    p.add_argument("--knn-k", type=int, default=10, help="mutual k-NN neighbor count")
    p.add_argument(
        "--omega", type=float, default=None, help="Butterworth knee (default: mean nonzero similarity)"
    )
    p.add_argument(
        "--kernel-sigma",
        type=float,
        default=None,
        help="kernel bandwidth (default: median pairwise distance)",
    )


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)


def _add_report_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default=None, help="write report here instead of stdout")
    p.add_argument(
        "--trace", action="store_true", help="include the objective trace"
    )
    p.add_argument("--labels", default=None, help="ground-truth labels file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzykm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate Gaussian blob data")
    p.add_argument("--n-per", type=int, required=True, help="samples per cluster")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--sep", type=float, required=True, help="min center separation")
    p.add_argument("--spread", type=float, required=True, help="per-cluster stddev")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-data", required=True)
    p.add_argument("--out-labels", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("dist", help="write a distance matrix CSV")
    _add_input_flags(p)
    _add_distance_flags(p, ["euclidean", "knn", "butterworth", "kernel"])
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("fit", help="run the solver, print a JSON/CSV report")
    _add_input_flags(p)
    _add_distance_flags(
        p, ["euclidean", "knn", "butterworth", "kernel", "precomputed"]
    )
    _add_solver_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=10.0)
    _add_report_flags(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sweep", help="run the solver over a lambda grid")
    _add_input_flags(p)
    _add_distance_flags(
        p, ["euclidean", "knn", "butterworth", "kernel", "precomputed"]
    )
    _add_solver_flags(p)
    p.add_argument(
        "--lambdas", required=True, help="comma-separated lambda grid, e.g. 1,5,10"
    )
    _add_report_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="score the solver against kmeans and fcm")
    _add_input_flags(p)
    p.add_argument(
        "--distances",
        default="euclidean",
        help="comma-separated distance kinds for the solver rows",
    )
    p.add_argument("--knn-k", type=int, default=10)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--kernel-sigma", type=float, default=None)
    _add_solver_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=10.0)
    _add_report_flags(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
