import json

import pytest

from trcalc import checks, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_homology_markdown(capsys):
    code, out = run(capsys, "homology", "--p", "2", "--n", "3", "--coeff", "Z", "--smax", "3")
    assert code == 0
    assert out.out.splitlines()[0] == "H_s(C_4; Z)"
    assert "| 1 | Z/4 | z_1 |" in out.out


def test_homology_json(capsys):
    code, out = run(capsys, "homology", "--n", "2", "--coeff", "Zmod:2", "--smax", "1", "--format", "json")
    data = json.loads(out.out)
    assert code == 0 and data["rows"][0]["group"]["torsion"] == [4]


def test_tr_group(capsys):
    code, out = run(capsys, "tr", "group", "--theory", "sphere", "--q", "3", "--n", "2", "--format", "json")
    assert code == 0 and json.loads(out.out)["torsion"] == [8, 8, 8]


def test_tr_apply(capsys):
    code, out = run(capsys, "tr", "apply", "--theory", "sphere", "--n", "2", "--op", "mul_eta",
                    "--elem", "eta^2")
    assert code == 0 and out.out.strip() == "mul_eta(eta^2) = 4 nu"


def test_tr_apply_undetermined(capsys):
    code, out = run(capsys, "tr", "apply", "--theory", "sphere", "--n", "2", "--op", "mul_eta",
                    "--elem", "eta xi_{1,1}")
    assert code == 2 and "undetermined" in out.out


def test_tr_laurent(capsys, tmp_path):
    path = tmp_path / "omega.json"
    path.write_text(json.dumps({"theory": "relative", "n": 3, "expr": "V^1(eta~[x]^3) + eta~[x]^-1"}))
    code, out = run(capsys, "tr", "laurent", "versch", "--in", str(path))
    data = json.loads(out.out)
    assert code == 0 and data["n"] == 4 and {e["s"] for e in data["a"]} == {1, 2}


def test_tr_kernel(capsys):
    code, out = run(capsys, "tr", "kernel", "--q", "2", "--levels", "4", "--jmax", "1", "--format", "json")
    data = json.loads(out.out)
    assert code == 0 and data["r_max"] == 1 and len(data["coordinates"]) == 2


def test_ss_compare(capsys):
    code, out = run(capsys, "ss", "--theory", "sphere", "--n", "3", "--page", "5", "--compare")
    assert code == 0
    assert "| t \\ s |" in out.out and "all match" in out.out


def test_ss_json(capsys):
    code, out = run(capsys, "ss", "--theory", "relative", "--n", "2", "--page", "inf", "--format", "json")
    data = json.loads(out.out)
    assert code == 0 and data["page"] == 6 and data["t_max"] == 5


def test_wh(capsys):
    code, out = run(capsys, "wh", "--q", "2", "--levels", "5", "--jmax", "1")
    data = json.loads(out.out)
    assert code == 0 and data["group"]["torsion"] == [2, 2, 2, 2]


def test_wh_truncation_too_small(capsys):
    code, out = run(capsys, "wh", "--q", "3", "--levels", "3", "--jmax", "1")
    assert code == 2 and "truncation" in out.err


def test_verify_all_exit_code(capsys, monkeypatch):
    def fake(passed):
        return lambda quick=False: [checks.CheckResult(1, "x", True, 0.1, 1.0, "ok", {}),
                                    checks.CheckResult(2, "y", passed, 0.1, None, "", {})]
    monkeypatch.setattr(checks, "verify_all", fake(True))
    assert run(capsys, "verify-all", "--quick")[0] == 0
    monkeypatch.setattr(checks, "verify_all", fake(False))
    code, out = run(capsys, "verify-all")
    assert code == 1 and "[FAIL] 2. y" in out.out


def test_bad_arguments():
    with pytest.raises(SystemExit):
        cli.main(["ss", "--theory", "rationals", "--n", "2"])
