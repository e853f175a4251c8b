"""End-to-end tests of the command-line harness and its reports."""
import csv
import io
import json
import pathlib
from typing import Any, Dict, List, Sequence, Tuple

# Third party imports
import pytest

# First party imports
from inexactlab import __version__
from inexactlab.energy.allocation import alpha_closed_form
from inexactlab.harness import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, Harness
from inexactlab.sort.instance import SortInstance, save_instance


def _run(*argv: str) -> Tuple[int, str, str]:
    stdout: io.StringIO = io.StringIO()
    stderr: io.StringIO = io.StringIO()
    status: int = Harness(stdout = stdout, stderr = stderr).run(list(argv))
    return status, stdout.getvalue(), stderr.getvalue()


def _rows(report: str) -> List[Dict[str, str]]:
    lines: List[str] = report.splitlines()
    assert lines[0].startswith(f"# inexactlab {__version__} seed=")
    return list(csv.DictReader(lines[1:]))


def test_influence_of_xor() -> None:
    status, report, _ = _run("influence", "--fn", "xor", "--n", "8", "--mode", "exact")
    assert status == EXIT_OK
    rows: List[Dict[str, str]] = _rows(report)
    assert [row["index"] for row in rows] == [str(index) for index in range(1, 9)]
    assert all(float(row["mean"]) == 1.0 for row in rows)


def test_allocate_xor_is_uniform() -> None:
    status, report, _ = _run("allocate", "--fn", "xor", "--n", "4", "--budget", "4")
    assert status == EXIT_OK
    rows: List[Dict[str, str]] = _rows(report)
    assert all(float(row["energy_optimal"]) == pytest.approx(1.0) for row in rows)
    assert all(float(row["alpha"]) == pytest.approx(1.0) for row in rows)
    assert all(row["clamped"] == "false" for row in rows)


def test_allocate_constant_has_no_alpha() -> None:
    status, report, _ = _run("allocate", "--fn", "constant", "--n", "3", "--format", "json")
    assert status == EXIT_OK
    document: Dict[str, Any] = json.loads(report)
    assert document["result"]["alpha"] is None
    assert document["result"]["optimal"]["diagnostic"]


def test_alpha_sweep_matches_closed_form() -> None:
    status, report, _ = _run("alpha-sweep", "--fn", "be", "--n", "4,8,12")
    assert status == EXIT_OK
    for row in _rows(report):
        n: int = int(row["n"])
        assert float(row["alpha"]) == pytest.approx(alpha_closed_form(2.0, n), rel = 1e-9)
        assert float(row["alpha_closed_form"]) == pytest.approx(alpha_closed_form(2.0, n), rel = 1e-12)


def test_json_report_layout() -> None:
    status, report, _ = _run("fourier", "--fn", "majority", "--n", "3", "--k", "1", "--epsilon", "0.3", "--format", "json")
    assert status == EXIT_OK
    document: Dict[str, Any] = json.loads(report)
    assert document["artifact_version"] == __version__
    assert document["command"] == "fourier"
    assert document["config"]["fn"] == "majority"
    assert "threads" not in document["config"]
    assert document["result"]["parseval_mass"] == pytest.approx(1.0)
    assert document["result"]["concentration"][0]["concentrated"] is True
    assert list(document) == sorted(document)


def test_fourier_rows() -> None:
    status, report, _ = _run("fourier", "--fn", "xor", "--n", "2")
    assert status == EXIT_OK
    rows: List[Dict[str, str]] = _rows(report)
    assert [(row["mask"], row["degree"]) for row in rows] == [("0", "0"), ("1", "1"), ("2", "1"), ("3", "2")]
    assert float(rows[3]["coef"]) == pytest.approx(1.0)


@pytest.mark.parametrize("argv", [
    ("alpha-star", "--n", "6,7", "--N", "8", "--instances", "3", "--trials", "5"),
    ("classify", "--n", "8", "--N", "4", "--instances", "4", "--trials", "5", "--noise", "per-element"),
    ("truncate-sweep", "--n", "6", "--N", "8", "--k", "1,2", "--instances", "2", "--trials", "3"),
    ("sort-sim", "--n", "10", "--N", "16", "--scheme", "oblivious", "--trials", "20"),
    ("pair-error", "--n", "8", "--instances", "3", "--trials", "70000"),
    ("learn", "--fn", "dictator", "--n", "5", "--m", "200,400", "--k", "0,1", "--holdout", "100"),
    ("influence", "--fn", "majority", "--n", "7", "--mode", "monte-carlo", "--samples", "70000"),
])
@pytest.mark.parametrize("output_format", ["csv", "json"])
def test_reports_do_not_depend_on_threads(argv: Sequence[str], output_format: str) -> None:
    single: Tuple[int, str, str] = _run(*argv, "--seed", "2024", "--format", output_format, "--threads", "1")
    pooled: Tuple[int, str, str] = _run(*argv, "--seed", "2024", "--format", output_format, "--threads", "4")
    assert single[0] == pooled[0] == EXIT_OK
    assert single[1] == pooled[1]


def test_truncate_sweep_rows() -> None:
    status, report, _ = _run("truncate-sweep", "--n", "6,8", "--N", "8", "--k", "2,3", "--instances", "2", "--trials", "3", "--seed", "1")
    assert status == EXIT_OK
    rows: List[Dict[str, str]] = _rows(report)
    assert [(row["n"], row["k_or_scheme"]) for row in rows] == [("6", "2"), ("8", "2"), ("6", "3"), ("8", "3")]
    assert all(row["seed"] == "1" for row in rows)


def test_pair_error_of_a_given_pair() -> None:
    status, report, _ = _run("pair-error", "--n", "6", "--a", "3", "--b", "40", "--trials", "5000", "--seed", "8")
    assert status == EXIT_OK
    rows: List[Dict[str, str]] = _rows(report)
    assert len(rows) == 1
    assert rows[0]["first_differing_bit"] == "6"
    assert rows[0]["trials"] == "5000"


def test_learn_derives_the_degree_cap() -> None:
    status, report, _ = _run("learn", "--fn", "be", "--n", "4", "--k", "", "--m", "100", "--seed", "1")
    # be is not Boolean, so examples can't be labelled
    assert status == EXIT_FAILURE
    status, report, _ = _run("learn", "--fn", "majority", "--n", "5", "--k", "", "--m", "2000", "--inf-bound", "1", "--beta1", "2",
                             "--epsilon", "0.5", "--seed", "1")
    assert status == EXIT_OK
    assert [row["k"] for row in _rows(report)] == ["3"]


def test_sort_sim_reads_an_instance(tmp_path: pathlib.Path) -> None:
    path: pathlib.Path = tmp_path.joinpath("instance.json")
    save_instance(SortInstance(8, (200, 3, 77, 150, 9)), path)
    status, report, _ = _run("sort-sim", "--instance", str(path), "--scheme", "aware", "--trials", "10", "--seed", "5")
    assert status == EXIT_OK
    row: Dict[str, str] = _rows(report)[0]
    assert (row["n"], row["N"], row["scheme"]) == ("8", "5", "aware")


def test_missing_seed_is_drawn_and_reported() -> None:
    status, report, _ = _run("sort-sim", "--n", "6", "--N", "4", "--trials", "2")
    assert status == EXIT_OK
    seed: str = report.splitlines()[0].split("seed=")[1]
    assert seed.isdigit()
    assert _rows(report)[0]["seed"] == seed


def test_output_file_and_config_overlay(tmp_path: pathlib.Path) -> None:
    user: pathlib.Path = tmp_path.joinpath("user.json")
    user.write_text(json.dumps({"influence": {"fn": "or", "n": [3]}}), encoding = "utf-8")
    output: pathlib.Path = tmp_path.joinpath("report.csv")
    status, report, _ = _run("influence", "--config", str(user), "--output", str(output))
    assert status == EXIT_OK
    assert report == ""
    rows: List[Dict[str, str]] = _rows(output.read_text(encoding = "utf-8"))
    assert [float(row["mean"]) for row in rows] == pytest.approx([0.25, 0.25, 0.25])


@pytest.mark.parametrize("argv", [
    ("alpha-star", "--n", "0"),
    ("influence", "--format", "xml"),
    ("teleport",),
    (),
    ("pair-error", "--n", "6", "--a", "3"),
    ("truncate-sweep", "--k", ""),
    ("allocate", "--n", "4,5"),
])
def test_usage_errors(argv: Sequence[str]) -> None:
    status, report, _ = _run(*argv)
    assert status == EXIT_USAGE
    assert report == ""


def test_learn_majority_at_degree_three() -> None:
    status, report, _ = _run("learn", "--fn", "majority", "--n", "5", "--k", "3", "--m", "100000", "--seed", "11")
    assert status == EXIT_OK
    row: Dict[str, str] = _rows(report)[0]
    assert (row["m"], row["k"]) == ("100000", "3")
    assert float(row["test_error"]) <= 0.1


def test_learn_without_k_uses_the_derived_cap() -> None:
    status, report, _ = _run("learn", "--fn", "majority", "--n", "5", "--m", "200", "--epsilon", "2.1", "--inf-bound", "1", "--beta1", "2",
                             "--holdout", "100", "--seed", "1")
    assert status == EXIT_OK
    assert [row["k"] for row in _rows(report)] == ["0"]


def test_fourier_without_k_checks_every_degree() -> None:
    status, report, _ = _run("fourier", "--fn", "xor", "--n", "4", "--format", "json")
    assert status == EXIT_OK
    checks: List[Dict[str, Any]] = json.loads(report)["result"]["concentration"]
    assert [check["k"] for check in checks] == [0, 1, 2, 3, 4]
    assert [check["concentrated"] for check in checks] == [False, False, False, False, True]


@pytest.mark.parametrize("argv, field", [
    (("influence", "--fn", "nand", "--n", "3"), "fn"),
    (("sort-sim", "--n", "8", "--scheme", "truncated", "--k", "9", "--seed", "1"), "k"),
    (("truncate-sweep", "--n", "6", "--k", "7"), "k"),
    (("fourier", "--fn", "xor", "--n", "3", "--k", "4"), "k"),
    (("pair-error", "--n", "4", "--a", "3", "--b", "16"), "b"),
    (("pair-error", "--n", "4", "--a", "5", "--b", "5"), "b"),
    (("learn", "--fn", "majority", "--n", "5", "--m", "100"), "beta1"),
])
def test_configuration_errors_name_the_field(argv: Sequence[str], field: str) -> None:
    status, report, errors = _run(*argv)
    assert status == EXIT_USAGE
    assert report == ""
    assert f"'{field}'" in errors


def test_malformed_truth_table_is_a_configuration_error(tmp_path: pathlib.Path) -> None:
    table: pathlib.Path = tmp_path.joinpath("table.json")
    table.write_text("[1, 0", encoding = "utf-8")
    status, _, errors = _run("influence", "--table", str(table))
    assert status == EXIT_USAGE
    assert "'table'" in errors


def test_library_errors_exit_with_failure() -> None:
    status, report, errors = _run("learn", "--fn", "be", "--n", "4", "--k", "1", "--m", "100", "--seed", "1")
    assert status == EXIT_FAILURE
    assert report == ""
    assert "learn: error:" in errors
