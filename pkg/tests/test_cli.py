import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from vcell.cli import UsageError, main, parse_point


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse_point_rejects_decimals():
    assert parse_point("1/3,2") == (Fraction(1, 3), 2)
    with pytest.raises(UsageError):
        parse_point("0.5,1/2")
    with pytest.raises(UsageError):
        parse_point("1/2")


def test_boundary_count_new(capsys):
    code, out = run(capsys, "boundary", "--n", "5", "--d", "4", "--count-new")
    assert code == 0 and out.strip() == "2"


def test_boundary_equations(capsys):
    code, out = run(capsys, "boundary", "--n", "6", "--d", "3", "--equations")
    data = json.loads(out)
    assert code == 0
    assert sorted(data["equations"]) == [f"b_{k}" for k in range(2, 7)]
    assert data["equations"]["b_2"] == "-9*x^2 + 12*x*y - 4*y^2 + 6*x - 4*y - 1"


def test_boundary_usage_error(capsys):
    assert main(["boundary", "--n", "2", "--d", "5"]) == 2
    assert "usage" in capsys.readouterr().err


def test_boundary_csv(capsys):
    code, out = run(capsys, "boundary", "--n", "4", "--d", "4", "--format", "csv", "--samples", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["kind", "m", "x1", "x2", "p2", "p3", "p4"]
    assert len(rows) > 3


def test_canonical_three(capsys):
    code, out = run(capsys, "canonical", "--n", "3")
    data = json.loads(out)
    assert code == 0
    assert len(data["combined"]["factors"]) == 2
    assert data["certificates"] == []


def test_canonical_four_reports_cancellation(capsys):
    code, out = run(capsys, "canonical", "--n", "4")
    data = json.loads(out)
    assert code == 0
    assert data["certificates"] == ["spurious factor l(c_3,(1,1)) cancelled"]


def test_canonical_six_all_simple(capsys):
    code, out = run(capsys, "canonical", "--n", "6")
    data = json.loads(out)
    assert code == 0
    assert data["logarithmic"]["logarithmic"]
    assert all(r["simple_poles"] for r in data["residues"])


def test_plot_counts_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["plot", "--n", "5", "--out", str(a)]) == 0
    assert main(["plot", "--n", "5", "--out", str(b)]) == 0
    text = a.read_text()
    assert a.read_bytes() == b.read_bytes()
    assert text.count('class="boundary"') == 4
    assert text.count('class="chord"') == 2
    assert text.count('class="tangent"') == 2
    assert text.count('class="cusp"') == 3
    assert main(["plot", "--n", "3", "--out", str(a)]) == 0
    assert a.read_text().count('class="boundary"') == 2


def test_membership_point_and_samples(capsys):
    code, out = run(capsys, "membership", "--n", "3", "--point", "7/18,1/6")
    assert code == 0 and json.loads(out)["label"] == "Inside"
    code, out = run(capsys, "membership", "--n", "4", "--samples", "50", "--seed", "3")
    assert code == 0 and json.loads(out)["counts"]["Outside"] == 0


def test_residue_and_logcheck(capsys):
    code, out = run(capsys, "residue", "--form", "A_I", "--curve", "cubic")
    assert code == 0
    assert json.loads(out)["residues"][0]["residue"] == "(2) / (t^2 - 1) dt"
    code, out = run(capsys, "logcheck", "--form", "nonlog")
    assert code == 1
    assert json.loads(out)["curves"][0]["offenders"] == [["cusp cubic", "0", 2]]
    code, _ = run(capsys, "logcheck", "--n", "4")
    assert code == 0
    assert main(["residue", "--form", "nope"]) == 2


def test_dualvol(capsys):
    code, out = run(capsys, "dualvol", "--vertices", "0,0;1,0;0,1", "--point", "1/3,1/3")
    assert code == 0 and json.loads(out)["value"] == "27"
    code, out = run(capsys, "dualvol", "--vertices", "0,0;1,0;0,1", "--point", "1,1")
    assert json.loads(out)["bounded"] is False
    assert main(["dualvol", "--point", "1/3,1/3"]) == 2


def test_limit_csv(capsys):
    code, out = run(capsys, "limit", "--N", "5", "--point", "7/18,1/6")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "value_num", "value_den", "float_approx", "delta_float"]
    assert [r[0] for r in rows[1:]] == ["3", "4", "5"]
    assert rows[1][4] == ""
    assert main(["limit", "--N", "5", "--point", "7/18,1/4"]) == 2


def test_fixtures_verify_and_selftest(capsys):
    code, out = run(capsys, "fixtures-verify", "--samples", "20")
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(capsys, "selftest")
    assert code == 0 and json.loads(out)["passed"]


def test_bad_flag_ranges(capsys):
    assert main(["membership", "--n", "3", "--samples", "0"]) == 2
    assert main(["canonical", "--n", "2"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vcell.cli", "boundary", "--n", "5", "--d", "4",
                           "--count-new"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
