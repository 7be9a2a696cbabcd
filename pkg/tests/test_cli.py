import json
import subprocess
import sys

import pytest

from spectralab.cli.main import dispatch


def run(capsys, *argv):
    rc = dispatch(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


@pytest.mark.parametrize("argv,want", [
    (("tr", "fg", "--curve", "gaussian", "--param", "T=1", "--g", "2"), "1/240"),
    (("toeplitz", "lndet", "--gamma", "pi", "--n", "7"), "0"),
    (("oracle", "fg", "--family", "sine", "--g", "4", "--s", "1"), "131/12"),
])
def test_reference_outputs(capsys, argv, want):
    rc, out, err = run(capsys, *argv)
    assert rc == 0 and out.strip() == want
    assert err.startswith("# spectralab")


def test_disputed_value_prints_both(capsys):
    rc, out, _ = run(capsys, "oracle", "fg", "--family", "sine", "--g", "5", "--s", "1")
    assert rc == 0
    assert "local_expansion\t-6575/16" in out and "jimbo_miwa\t-6375/16" in out


def test_stanza_reports_precision_source(capsys, monkeypatch):
    monkeypatch.setenv("SPECTRALAB_PREC_BITS", "96")
    _, _, err = run(capsys, "toeplitz", "lndet", "--gamma-pi", "1/2", "--n", "3")
    assert "# precision: 96 bits (SPECTRALAB_PREC_BITS)" in err
    assert "# SPECTRALAB_PREC_BITS: 96" in err
    _, _, err = run(capsys, "toeplitz", "lndet", "--gamma-pi", "1/2", "--n", "3", "--prec", "80")
    assert "# precision: 80 bits (--prec)" in err


@pytest.mark.parametrize("argv", [
    ("tr", "fg", "--curve", "nope", "--g", "2"),
    ("toeplitz", "lndet", "--n", "3"),
    ("toeplitz", "lndet", "--gamma", "pi", "--a", "1/2", "--n", "3"),
    ("toeplitz", "oracle", "--gamma-pi", "1/3", "--n", "5"),
    ("tr", "fg", "--curve", "gaussian", "--g", "2", "--bogus"),
    ("toeplitz", "lndet", "--gamma", "pi", "--n", "3", "--prec", "8"),
])
def test_bad_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_check_failure_exit_1(capsys):
    assert run(capsys, "painleve", "compat", "--name", "P2", "--points", "3", "--perturb", "1")[0] == 1
    assert run(capsys, "painleve", "compat", "--name", "P2", "--points", "3")[0] == 0


def test_numeric_failure_exit_3(capsys):
    rc, _, err = run(capsys, "universality", "fredholm", "--s", "20", "--m", "20")
    assert rc == 3 and "numeric failure" in err


def test_out_file_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        argv = ["mc", "run", "--model", "gaussian", "--N", "10", "--sweeps", "1300",
                "--burn-in", "100", "--seed", "9", "--out", str(path)]
        assert dispatch(argv) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_curve_show_validate_round_trip(tmp_path, capsys):
    rc, out, _ = run(capsys, "curve", "show", "--curve", "toeplitz_arc", "--param", "a=3/4")
    assert rc == 0
    f = tmp_path / "c.json"
    f.write_text(out)
    rc, out, _ = run(capsys, "curve", "validate", str(f))
    assert rc == 0 and json.loads(out)["ok"]
    doc = json.loads(f.read_text())
    doc["sigma"]["b"] = "2"
    f.write_text(json.dumps(doc))
    assert run(capsys, "curve", "validate", str(f))[0] in (1, 2)


def test_toeplitz_table_csv(capsys):
    rc, out, _ = run(capsys, "toeplitz", "table", "--gamma-pi", "1/2", "--n-max", "4")
    lines = out.splitlines()
    assert rc == 0 and lines[0] == "N,lndet,res0,res1,res2,res3" and len(lines) == 5


def test_entry_point_installed():
    r = subprocess.run([sys.executable, "-m", "spectralab.cli.main", "oracle", "fg",
                        "--family", "gaussian", "--g", "2", "--T", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "1/240"
