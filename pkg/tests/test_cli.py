import io
import json
import subprocess
import sys

import numpy as np
import pytest

from abelian_pw.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from abelian_pw.filtration_tables import BigradedTable
from abelian_pw.laurent import BiLaurent
from abelian_pw.nah_geometry import Lattice


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_p_equals_w_grid():
    code, out = call("verify", "p-equals-w", "--g-max", "3", "--r-max", "3")
    assert code == EXIT_OK
    assert out.count("[PASS]") == 9


def test_manifold_g2_r2():
    code, out = call("verify", "manifold", "--g", "2", "--r", "2")
    assert code == EXIT_OK
    assert "5: Z/2" in out and "7: Z" in out and "not a manifold" in out


def test_table_json_round_trips():
    code, out = call("table", "--g", "1", "--r", "2", "--format", "json")
    assert code == EXIT_OK
    table = BigradedTable.from_json(json.loads(out))
    assert table.diagonal() == [1, 2, 2, 2, 1]
    assert json.loads(json.dumps(table.to_json())) == json.loads(out)


def test_table_csv_columns():
    code, out = call("table", "--g", "1", "--r", "1", "--side", "dolbeault", "--format", "csv")
    assert out.splitlines()[0] == "g,r,side,k,j,dim"


def test_hodge_poly_json():
    code, out = call("hodge-poly", "--g", "1", "--r", "2", "--format", "json")
    data = json.loads(out)
    assert BiLaurent.from_json(data["terms"]).evaluate(1, 1) == 8


VERIFY = [
    ("p-equals-w", ["--g", "1", "--r", "2"]),
    ("curious-duality", ["--g", "1", "--r", "3"]),
    ("hodge-tate", ["--g", "1", "--r", "2"]),
    ("hard-lefschetz", ["--g", "1", "--r", "2"]),
    ("manifold", ["--g", "2", "--r", "2"]),
    ("rational-sphere", ["--g", "2", "--r", "2"]),
]


@pytest.mark.parametrize("check,args", VERIFY)
def test_verify_exit_codes(check, args):
    assert call("verify", check, *args)[0] == EXIT_OK
    code, out = call("verify", check, *args, "--inject-fault", "--format", "json")
    assert code == EXIT_FAIL
    data = json.loads(out)
    assert data["pass"] is False
    assert data["reports"][0]["counterexample"]
    assert data["reports"][0]["claim"]


@pytest.mark.parametrize("check", ["roundtrip", "diagram"])
def test_nah_exit_codes(check):
    assert call("nah", check, "--g", "2", "--r", "2", "--samples", "50")[0] == EXIT_OK
    assert call("nah", check, "--g", "2", "--r", "2", "--samples", "50", "--inject-fault")[0] == EXIT_FAIL


def test_nah_with_lattice_file_and_radii(tmp_path):
    lat = Lattice.random(2, np.random.default_rng(5))
    path = tmp_path / "lattice.json"
    path.write_text(json.dumps(lat.to_json()))
    code, out = call("nah", "diagram", "--g", "2", "--r", "3", "--lattice", str(path), "--radius", "0", "1", "5", "--format", "json")
    assert code == EXIT_OK
    assert [r["params"]["radius"] for r in json.loads(out)["reports"]] == [0, 1, 5]
    assert call("nah", "diagram", "--g", "1", "--r", "1", "--lattice", str(path))[0] == EXIT_USAGE


def test_tolerance_flag_is_honored():
    assert call("nah", "roundtrip", "--g", "1", "--r", "1", "--samples", "20", "--tolerance", "1e-30")[0] == EXIT_FAIL


def test_sd_commands():
    code, out = call("sd", "embed", "--sd", "[[2],[3]]", "--format", "json")
    data = json.loads(out)
    assert data["sigma"]["1"][0]["value"] == 5 and data["sigma"]["2"][0]["value"] == 6
    code, out = call("sd", "retract", "--sd", "[[3, 4]]", "--format", "json")
    assert json.loads(out)["retraction"] == [[pytest.approx(0.6), pytest.approx(0.8)]]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "manifold", "--bogus"],
        ["frobnicate"],
        ["table", "--g", "5", "--r", "3"],
        ["table", "--g", "0", "--r", "1"],
        ["verify", "p-equals-w", "--g-max", "0"],
        ["table", "--g", "1", "--g-max", "2"],
        ["sd", "embed", "--sd", "not json"],
        ["verify", "hard-lefschetz", "--g", "2", "--r", "1", "--weights", "1"],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_env_bound(monkeypatch):
    monkeypatch.setenv("PW_MAX_WORD_BITS", "4")
    assert call("table", "--g", "1", "--r", "3")[0] == EXIT_USAGE
    assert call("table", "--g", "1", "--r", "3", "--max-word-bits", "6")[0] == EXIT_OK


def test_output_is_deterministic():
    argv = ["nah", "diagram", "--g", "2", "--r", "3", "--samples", "40", "--seed", "9", "--format", "json"]
    assert call(*argv) == call(*argv)


def test_parallel_grid_keeps_order():
    serial = call("verify", "curious-duality", "--g-max", "2", "--r-max", "2", "--format", "json")
    parallel = call("verify", "curious-duality", "--g-max", "2", "--r-max", "2", "--format", "json", "--jobs", "2")
    assert serial == parallel


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "abelian_pw.cli", "verify", "rational-sphere", "--g", "1", "--r", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "[PASS]" in proc.stdout
