import io
import json
import shutil
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from mod2config import cli, verify


def entry(check_id):
    return next(e for e in verify.manifest() if e["id"] == check_id)


CLAIM = entry("ideal-q3")
SMALL_DUAL = entry("dual-d3-m2")
LARGE_DUAL = entry("dual-d6-m2")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def schema_for(name):
    path = resources.files("mod2config.data").joinpath("schemas", f"{name}.v1.json")
    return json.loads(path.read_text())


JSON_CASES = [
    ("dickson", ["--m", "3", "--r", "1"]),
    ("dickson", ["--m", "2", "--r", "0", "--basis", "x"]),
    ("mui", ["--m", "3", "--i", "3"]),
    ("res-v", ["--m", "3", "--r", "2"]),
    ("dual-sw", ["--d", "6", "--m", "2"]),
    ("dual-sw", ["--d", "6", "--m", "2", "--degree", "11", "--witness", "V1*V2^5"]),
    ("dual-sw", ["--d", "3", "--m", "2", "--power", "4"]),
    ("ideal", ["--n", "2", "--q", "3", "--max-degree", "8"]),
    ("ideal", ["--n", "2", "--q", "4", "--member", "Q0*Q1^3"]),
    ("key", ["--d", "3", "--m", "2", "--ell", "1", "--r", "0,2"]),
    ("binom2", ["--a", "-1", "--b", "5"]),
    ("bounds", ["--kind", "l-skew", "--d", "3", "--ell", "5", "--all-theorems"]),
    ("bounds", ["--kind", "k-regular-l-skew", "--table", "4,2,2"]),
    ("homdim", ["--d", "3", "--k", "4"]),
    ("fuks", ["--n", "8"]),
    ("pe-series", ["--d", "5", "--m", "2"]),
    ("verify-paper", ["--section", CLAIM["section"]]),
]


@pytest.mark.parametrize("cmd,args", JSON_CASES)
def test_json_validates_against_schema(cmd, args):
    code, out, _ = run(cmd, *args, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == f"mod2config/{cmd}/v1"
    jsonschema.validate(doc, schema_for(cmd))
    assert list(doc)[0] == "schema"


@pytest.mark.parametrize("cmd,args", JSON_CASES)
def test_deterministic_output(cmd, args):
    assert run(cmd, *args) == run(cmd, *args)


def test_homdim_csv():
    code, out, _ = run("homdim", "--d", "3", "--k", "4", "--format", "csv")
    assert code == 0
    assert out == "i,dim\n0,1\n1,1\n2,2\n3,2\n4,1\n5,1\n6,1\n"


def test_ideal_counterexample():
    code, out, _ = run("ideal", "--n", "2", "--q", "3", "--check-monomial-generation")
    assert code == 0
    assert "Q0^2 + Q1^3" in out


def test_bounds_trivial_and_csv():
    code, out, _ = run("bounds", "--kind", "k-regular", "--d", "2", "--k", "1", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "d,k,ell,theorem,case,excluded_N"
    assert row.split(",")[-1] == "0"


def test_bounds_none_value():
    code, out, _ = run("bounds", "--kind", "l-skew", "--d", "3", "--ell", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["results"][0]["excluded_N"] is None


def test_polynomial_text_outputs():
    assert run("dickson", "--m", "2", "--r", "1")[1] == "k1^2 + k2\n"
    assert run("dickson", "--m", "2", "--r", "1", "--basis", "x")[1] == "x1^2 + x1*x2 + x2^2\n"
    assert run("mui", "--m", "3", "--i", "1")[1] == "x3\n"
    assert run("key", "--d", "4", "--m", "1", "--ell", "2", "--r", "1")[1] == "1\n"


@pytest.mark.parametrize("argv", [
    ["dickson", "--m", "2", "--r", "0", "--bogus"],
    ["dickson", "--m", "2"],
    ["nosuch"],
    [],
    ["dickson", "--m", "99", "--r", "0"],
    ["key", "--d", "3", "--m", "2", "--ell", "1", "--r", "0"],
    ["key", "--d", "3", "--m", "1", "--ell", "1", "--r", "x"],
    ["bounds", "--kind", "k-regular", "--d", "3"],
    ["dual-sw", "--d", "3", "--m", "2", "--witness", "V1 + V2"],
    ["ideal", "--n", "2", "--q", "3", "--member", "Q7"],
])
def test_parameter_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_resource_guard_exit_2():
    code, _, err = run("dual-sw", "--d", "2", "--m", "6", "--max-terms", "3")
    assert code == 2 and "resource guard" in err
    code, _, _ = run("bounds", "--kind", "k-regular", "--table", "100,100", "--max-grid", "10")
    assert code == 2
    code, _, _ = run("homdim", "--d", "12", "--k", "3")
    assert code == 2


def test_verify_full_run_passes():
    code, out, _ = run("verify-paper")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == f"{len(verify.manifest())}/{len(verify.manifest())} checks passed"


def test_verify_section_filter():
    code, out, _ = run("verify-paper", "--section", CLAIM["section"])
    assert code == 0
    anchors = {line.split(" [")[0][5:] for line in out.splitlines()[:-1]}
    assert anchors == {CLAIM["anchor"]}
    code, _, _ = run("verify-paper", "--section", "99")
    assert code == 1


def test_verify_fault_injection(tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(verify.golden_dir(), golden)
    target = golden / SMALL_DUAL["file"]
    target.write_text(target.read_text().replace("V2^2\n", "V1*V2\n"))
    code, out, err = run("verify-paper", "--golden-dir", str(golden))
    assert code == 3
    assert SMALL_DUAL["anchor"] in err
    assert any(line.startswith("FAIL " + SMALL_DUAL["anchor"]) for line in out.splitlines())
    # every other anchor still passes
    assert sum(line.startswith("FAIL") for line in out.splitlines()) == 1


def test_verify_missing_golden(tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(verify.golden_dir(), golden)
    (golden / LARGE_DUAL["file"]).unlink()
    code, _, err = run("verify-paper", "--golden-dir", str(golden), "--format", "json")
    assert code == 3 and LARGE_DUAL["anchor"] in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mod2config", "binom2", "--a", "6", "--b", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"


def test_goldens_regenerate_identically(tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(verify.golden_dir(), golden)
    for e in verify.manifest():
        (golden / e["file"]).write_text("stale\n")
    verify.write_goldens(golden)
    for e in verify.manifest():
        assert (golden / e["file"]).read_text() == (verify.golden_dir() / e["file"]).read_text()
