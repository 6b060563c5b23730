import json
import re
import subprocess
import sys

import numpy as np
import pytest

from fuzzykm import load_matrix_csv


def run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "fuzzykm.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def strip_wall_time(text):
    return re.sub(r'"wall_time_ms": \d+', '"wall_time_ms": 0', text)


@pytest.fixture()
def blob_files(tmp_path):
    result = run_cli(
        [
            "synth", "--n-per", "20", "--k", "3", "--dim", "2", "--sep", "20",
            "--spread", "1", "--seed", "7", "--out-data", "x.csv",
            "--out-labels", "y.txt",
        ],
        cwd=tmp_path,
    )
    assert result.returncode == 0, result.stderr
    return tmp_path


def test_synth_sizes_and_determinism(tmp_path):
    args = [
        "synth", "--n-per", "15", "--k", "2", "--dim", "3", "--sep", "9",
        "--spread", "0.5", "--seed", "3", "--out-data", "a.csv",
        "--out-labels", "a.txt",
    ]
    assert run_cli(args, tmp_path).returncode == 0
    first_data = (tmp_path / "a.csv").read_bytes()
    first_labels = (tmp_path / "a.txt").read_bytes()
    assert load_matrix_csv(tmp_path / "a.csv").shape == (30, 3)
    assert len((tmp_path / "a.txt").read_text().splitlines()) == 30

    assert run_cli(args, tmp_path).returncode == 0
    assert (tmp_path / "a.csv").read_bytes() == first_data
    assert (tmp_path / "a.txt").read_bytes() == first_labels


def test_synth_rejects_bad_params(tmp_path):
    result = run_cli(
        [
            "synth", "--n-per", "5", "--k", "0", "--dim", "2", "--sep", "5",
            "--spread", "1", "--seed", "0", "--out-data", "b.csv",
            "--out-labels", "b.txt",
        ],
        cwd=tmp_path,
    )
    assert result.returncode == 1
    assert "error" in result.stderr


def test_dist_writes_valid_matrix(tmp_path):
    (tmp_path / "two.csv").write_text("0.0\n3.0\n")
    result = run_cli(
        ["dist", "--input", "two.csv", "--distance", "euclidean", "--output", "d.csv"],
        cwd=tmp_path,
    )
    assert result.returncode == 0
    assert "2x2" in result.stdout
    d = load_matrix_csv(tmp_path / "d.csv")
    assert np.array_equal(d, np.array([[0.0, 9.0], [9.0, 0.0]]))


def test_dist_rejects_bad_knn_k(blob_files):
    result = run_cli(
        [
            "dist", "--input", "x.csv", "--distance", "knn", "--knn-k", "0",
            "--output", "d.csv",
        ],
        cwd=blob_files,
    )
    assert result.returncode == 1


def test_fit_report_schema(blob_files):
    result = run_cli(
        [
            "fit", "--input", "x.csv", "--distance", "euclidean", "--k", "3",
            "--lambda", "5", "--seed", "0", "--labels", "y.txt", "--trace",
        ],
        cwd=blob_files,
    )
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    keys = list(report)
    assert keys == [
        "run_id", "dataset", "distance_kind", "k", "lambda", "seed",
        "iterations", "converged", "objective_final", "objective_trace",
        "acc", "nmi", "purity_majority", "purity_pairs", "wall_time_ms",
    ]
    assert report["distance_kind"] == {"kind": "euclidean_sq", "params": {}}
    assert report["converged"] is True
    assert report["iterations"] == len(report["objective_trace"]) - 1
    assert report["objective_trace"][0][0] == 0
    assert report["acc"] >= 0.99
    assert re.fullmatch(r"[0-9a-f]{12}", report["run_id"])


def test_fit_without_labels_omits_metrics(blob_files):
    result = run_cli(
        ["fit", "--input", "x.csv", "--k", "3", "--lambda", "5"],
        cwd=blob_files,
    )
    report = json.loads(result.stdout)
    for key in ("acc", "nmi", "purity_majority", "purity_pairs"):
        assert key not in report
    assert "objective_trace" not in report


def test_fit_deterministic_up_to_wall_time(blob_files):
    args = [
        "fit", "--input", "x.csv", "--k", "3", "--lambda", "5", "--seed", "7",
        "--labels", "y.txt", "--trace",
    ]
    a = run_cli(args, blob_files)
    b = run_cli(args, blob_files)
    assert a.returncode == 0 and b.returncode == 0
    assert strip_wall_time(a.stdout) == strip_wall_time(b.stdout)


def test_fit_precomputed_pipeline_equality(blob_files):
    assert (
        run_cli(
            [
                "dist", "--input", "x.csv", "--distance", "euclidean",
                "--output", "d.csv",
            ],
            cwd=blob_files,
        ).returncode
        == 0
    )
    inline = json.loads(
        run_cli(
            [
                "fit", "--input", "x.csv", "--distance", "euclidean", "--k", "3",
                "--lambda", "5", "--seed", "0", "--labels", "y.txt", "--trace",
            ],
            cwd=blob_files,
        ).stdout
    )
    precomputed = json.loads(
        run_cli(
            [
                "fit", "--input", "d.csv", "--distance", "precomputed", "--k", "3",
                "--lambda", "5", "--seed", "0", "--labels", "y.txt", "--trace",
            ],
            cwd=blob_files,
        ).stdout
    )
    for key in (
        "k", "lambda", "seed", "iterations", "converged", "objective_final",
        "objective_trace", "acc", "nmi", "purity_majority", "purity_pairs",
    ):
        assert inline[key] == precomputed[key], key


def test_fit_csv_format(blob_files):
    result = run_cli(
        [
            "fit", "--input", "x.csv", "--k", "3", "--lambda", "5",
            "--labels", "y.txt", "--format", "csv",
        ],
        cwd=blob_files,
    )
    lines = result.stdout.splitlines()
    assert len(lines) == 2
    header = lines[0].split(",")
    for key in ("run_id", "distance_kind", "distance_params", "acc", "wall_time_ms"):
        assert key in header


def test_fit_output_file(blob_files):
    result = run_cli(
        [
            "fit", "--input", "x.csv", "--k", "3", "--lambda", "5",
            "--output", "report.json",
        ],
        cwd=blob_files,
    )
    assert result.returncode == 0
    assert result.stdout == ""
    report = json.loads((blob_files / "report.json").read_text())
    assert report["k"] == 3


def test_sweep_grid_order_and_error_rows(blob_files):
    result = run_cli(
        [
            "sweep", "--input", "x.csv", "--k", "3", "--lambdas", "5,1e308,1",
            "--seed", "0", "--labels", "y.txt",
        ],
        cwd=blob_files,
    )
    assert result.returncode == 0, result.stderr
    reports = json.loads(result.stdout)
    assert [r["lambda"] for r in reports] == [5.0, 1e308, 1.0]
    assert "error" not in reports[0] and "error" not in reports[2]
    assert "non-finite" in reports[1]["error"]
    assert reports[0]["acc"] >= 0.99


def test_sweep_empty_grid_is_usage_error(blob_files):
    result = run_cli(
        ["sweep", "--input", "x.csv", "--k", "3", "--lambdas", ","],
        cwd=blob_files,
    )
    assert result.returncode == 1


def test_compare_emits_all_methods(blob_files):
    result = run_cli(
        [
            "compare", "--input", "x.csv", "--k", "3", "--labels", "y.txt",
            "--lambda", "5", "--seed", "0",
        ],
        cwd=blob_files,
    )
    assert result.returncode == 0, result.stderr
    rows = json.loads(result.stdout)
    assert [r["method"] for r in rows] == ["fkm_euclidean", "kmeans", "fcm"]
    for row in rows:
        for key in ("acc", "nmi", "purity_majority", "purity_pairs"):
            assert key in row
    assert all(row["acc"] >= 0.95 for row in rows)


def test_compare_requires_labels(blob_files):
    result = run_cli(["compare", "--input", "x.csv", "--k", "3"], cwd=blob_files)
    assert result.returncode == 1


def test_exit_codes(blob_files):
    missing = run_cli(["fit", "--input", "nope.csv", "--k", "3"], cwd=blob_files)
    assert missing.returncode == 1
    assert "no such file" in missing.stderr

    bad_k = run_cli(["fit", "--input", "x.csv", "--k", "0"], cwd=blob_files)
    assert bad_k.returncode == 1

    numeric = run_cli(
        ["fit", "--input", "x.csv", "--k", "3", "--lambda", "1e308"],
        cwd=blob_files,
    )
    assert numeric.returncode == 2
    assert "non-finite" in numeric.stderr

    usage = run_cli(["fit", "--input", "x.csv"], cwd=blob_files)
    assert usage.returncode == 1

    unknown = run_cli(["bogus"], cwd=blob_files)
    assert unknown.returncode == 1
