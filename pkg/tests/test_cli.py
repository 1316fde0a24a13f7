import csv
import io
import json
import subprocess
import sys

import pytest

from horikawa import __version__
from horikawa.cli import EXIT_INTERNAL, EXIT_OK, EXIT_REJECTED, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def envelope(*argv):
    code, out, _ = call(*argv)
    assert code == EXIT_OK, out
    return json.loads(out)


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_classify_csv():
    code, out, _ = call("classify", "--pg", "6", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    assert list(rows[0]) == ["pg", "image", "d", "L_a", "L_b", "Ksq"]
    assert {r["image"] for r in rows} == {"P2", "F", "cone"}


def test_classify_range_and_envelope():
    env = envelope("classify", "--pg", "3", "--to", "12")
    assert env["payload"]["row_count"] == 28
    assert env["version"] == __version__
    assert env["command"] == ["classify", "--pg", "3", "--to", "12"]
    assert env["warnings"] == []


def test_classify_table():
    code, out, _ = call("classify", "--pg", "4", "--format", "table")
    assert code == EXIT_OK and out.splitlines()[0].split() == ["pg", "image", "d", "L_a", "L_b", "Ksq"]


def test_validate_accept_and_reject():
    env = envelope("classify", "--validate", "--image", "F:4", "--L", "3,11")
    assert env["payload"]["verdict"] == "accept" and env["payload"]["datum"]["pg"] == 8
    code, out, _ = call("classify", "--validate", "--image", "F:4", "--L", "3,10")
    assert code == EXIT_REJECTED
    assert json.loads(out)["payload"]["reason"] == "d_bound"


def test_inadmissible_range_rejected():
    assert call("classify", "--pg", "2")[0] == EXIT_REJECTED


def test_cohom_dual_region_example():
    env = envelope("cohom", "--surface", "F:3", "--bundle", "-2,-5", "--oracle")
    p = env["payload"]
    assert p["cohomology"]["h1"] == 0 and p["oracle"]["agrees"]


def test_cohom_oracle_limit_is_a_rejection():
    code, out, _ = call("cohom", "--surface", "F:1", "--bundle", "1,40", "--oracle")
    assert code == EXIT_REJECTED and json.loads(out)["payload"]["error"] == "OracleLimitExceeded"


def test_cover():
    p = envelope("cover", "--surface", "P2", "--bundle", "4", "--n", "3")["payload"]
    assert p["invariants"] == {"Ksq": 2, "pg": 3, "chi": 4, "h01": 0, "on_noether_line": True}
    assert p["plurigenera"] == {"1": 3, "2": 6, "3": 10}
    assert p["noether"]["status"] == "on_line"


def test_cover_splitting_failure_rejected():
    assert call("cover", "--surface", "F:1", "--bundle", "4,3")[0] == EXIT_REJECTED


def test_foliate_example():
    p = envelope("foliate", "--d", "4", "--ell", "9", "--m", "0")["payload"]
    assert p["report"]["divisor_class"] == {"surface": "F4", "coeffs": [-4, -14]}
    assert sorted(z["multiplicity"] for z in p["report"]["zeros"]) == [8] * 9
    assert p["quotient"]["pg"] == 6


def test_foliate_discrepancy_is_reported():
    env = envelope("foliate", "--d", "2", "--ell", "4", "--m", "1")
    assert env["payload"]["report"]["case_value"] == 2
    assert env["payload"]["quotient"] == {"rejected": True, "case_value": 2}
    assert env["warnings"]


def test_foliate_delta_sum_and_catalog():
    p = envelope("foliate", "--remark55")["payload"]
    assert p["report"]["total_multiplicity"] == 52 and p["quotient"]["pg"] == 3
    p = envelope("foliate", "--catalog", "--pg", "7", "--image", "F:3")["payload"]
    assert p["plan"]["recipe"]["case_value"] == 4 and p["quotient"]["pg"] == 7
    p = envelope("foliate", "--catalog", "--pg", "6", "--image", "P2")["payload"]
    assert p["plan"]["verified"]["Ksq"] == 8


def test_foliate_custom_points():
    p = envelope("foliate", "--d", "2", "--ell", "4", "--m", "0", "--field", "2^3", "--a", "3,4,5,6")["payload"]
    assert p["recipe"]["a_points"] == [3, 4, 5, 6] and p["report"]["total_multiplicity"] == 32
    assert call("foliate", "--d", "2", "--ell", "4", "--m", "0", "--a", "1,1,2,3")[0] == EXIT_REJECTED
    assert call("foliate", "--d", "2", "--ell", "4", "--m", "0", "--field", "Q")[0] == EXIT_USAGE


def test_deform():
    p = envelope("deform", "--pg", "4", "--image", "F:0", "--lambda", "0,1", "--seed", "3")["payload"]
    assert [r["separable"] for r in p["rows"]] == [False, True]
    assert p["invariants_constant"] and p["Ksq_column"] == [4]
    assert call("deform", "--pg", "4", "--image", "F:3")[0] == EXIT_REJECTED


def test_lift():
    p = envelope("lift", "--pg", "6", "--image", "F:2")["payload"]
    assert p["report"]["passed"]
    code, out, _ = call("lift", "--surface", "F:2", "--bundle", "1,-1")
    assert code == EXIT_REJECTED and json.loads(out)["payload"]["error"] == "LiftRefused"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--pg", "6"],
        ["foliate", "--d", "4", "--ell", "7", "--m", "0"],
        ["deform", "--pg", "8", "--image", "F:2", "--lambda", "0,1,2", "--seed", "11", "--field", "2^2"],
        ["lift", "--pg", "5", "--image", "cone:3", "--seed", "4"],
    ],
)
def test_byte_identical_and_exact(argv):
    a, b = call(*argv), call(*argv)
    assert a == b
    assert _no_floats(json.loads(a[1]))


def test_usage_errors():
    assert call("classify", "--bogus")[0] == EXIT_USAGE
    assert call("nonsense")[0] == EXIT_USAGE
    assert call()[0] == EXIT_USAGE
    assert call("cohom", "--surface", "F:2", "--bundle", "1")[0] == EXIT_USAGE
    code, _, err = call("classify", "--validate", "--image", "F:2")
    assert code == EXIT_USAGE and "--L" in err


def test_help(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "classify" in capsys.readouterr().out
    assert run(["cover", "--help"]) == EXIT_OK
    assert "--bundle" in capsys.readouterr().out


def test_selftest_reports_each_criterion():
    code, out, _ = call("selftest", "--format", "table")
    lines = out.splitlines()
    assert len(lines) == 8 and all(l.split()[0] in ("PASS", "FAIL") for l in lines)
    assert code == (EXIT_OK if all(l.startswith("PASS") for l in lines) else EXIT_INTERNAL)


def test_console_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "horikawa", "cohom", "--surface", "P2", "--bundle", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["cohomology"]["h0"] == 6
