import csv
import json
import math

import pytest

from muzeta.cli import fmt_complex, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("-1,0") == -1
    assert parse_complex("2.5,-3") == 2.5 - 3j
    assert parse_complex("4") == 4


def test_fmt_complex():
    assert fmt_complex(-0.5 + 0j) == "-0.5"
    assert fmt_complex(0.9999999999998 + 1e-14j) == "1.0"
    assert fmt_complex(1 - 2j) == "1.0-2.0i"


def test_eval_mu(capsys):
    code, out, _ = run(capsys, "eval", "mu", "--s", "-1,0")
    assert code == 0 and out.splitlines()[0] == "-0.5"


def test_eval_lambda(capsys):
    code, out, _ = run(capsys, "eval", "lambda", "--s", "2.5,0")
    assert code == 0
    assert out.splitlines()[0] == "1.0 (expected 1)"
    assert "terms_used" in out and "tail_estimate" in out


def test_eval_zeta_pole(capsys):
    code, _, err = run(capsys, "eval", "zeta", "--s", "1,0")
    assert code == 2 and "pole at s=1" in err


def test_eval_domain_errors(capsys):
    assert run(capsys, "eval", "mu_direct", "--s", "0.5,0")[0] == 2
    assert run(capsys, "eval", "beta", "--s", "1.5,0")[0] == 2
    assert run(capsys, "eval", "alpha", "--s", "0")[0] == 2


def test_eval_nonconvergence_exit_code(capsys):
    code, _, err = run(capsys, "eval", "zeta", "--s", "0.5,300", "--max-terms", "64")
    assert code == 3 and "non-convergence" in err


def test_eval_beta_alpha(capsys):
    code, out, _ = run(capsys, "eval", "beta", "--s", "-1,0")
    assert code == 0 and out.startswith("2/3 (expected 2/3)")
    code, out, _ = run(capsys, "eval", "alpha", "--s", "2,0")
    assert code == 0 and out.startswith("-0.5 (expected -1/2)")


def test_bad_option_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "nope", "--s", "1,0"])
    assert exc.value.code == 2


def test_bernoulli_exact(capsys):
    code, out, _ = run(capsys, "bernoulli", "3", "--exact")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:5]]
    assert [r[1] for r in rows] == ["1", "-1/2", "1/6", "0"]
    assert rows[1][2] == "-1/12"
    assert out.splitlines()[-1] == "B: 1, -1/2, 1/6, 0"


def test_bernoulli_range(capsys):
    assert run(capsys, "bernoulli", "129")[0] == 2
    code, out, _ = run(capsys, "bernoulli", "2")
    assert code == 0 and "0.16666666666666666" in out


def test_sweep_mu_csv(tmp_path, capsys):
    out = tmp_path / "mu.csv"
    assert run(capsys, "sweep", "mu", "--grid", "0:2,-1:1,11x11", "--out", str(out))[0] == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 121
    assert list(rows[0]) == ["re_s", "im_s", "re_value", "im_value", "terms_used", "converged", "status"]
    pole = [r for r in rows if r["status"] == "excluded"]
    assert len(pole) == 1 and float(pole[0]["re_s"]) == 1.0 and float(pole[0]["im_s"]) == 0.0


def test_sweep_lambda_minus_one_json(tmp_path, capsys):
    out = tmp_path / "lam.json"
    code = run(capsys, "sweep", "lambda_minus_one", "--grid", "-3:3,-2:2,7x5", "--format", "json",
               "--out", str(out))[0]
    assert code == 0
    rows = json.loads(out.read_text())["rows"]
    ok = [r for r in rows if r["status"] == "ok"]
    assert len(ok) == 34  # 35 points less s = 1
    assert all(math.hypot(r["re_value"], r["im_value"]) < 1e-9 for r in ok)


def test_sweep_functional(capsys):
    code, out, _ = run(capsys, "sweep", "mu_functional", "--grid", "-4:4,-4:4,9x9")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0 and len(rows) == 81
    assert all(abs(float(r["re_value"])) < 1e-14 for r in rows if r["status"] == "ok")


def test_sweep_records_errors_in_rows(capsys):
    code, out, _ = run(capsys, "sweep", "mu_direct", "--grid", "0:3,0:1,4x2")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0
    assert {r["status"] for r in rows} == {"domain_error", "excluded", "ok"}


def test_sweep_parallel_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "sweep", "lambda", "--grid", "-3:3,-3:3,7x7", "--out", str(a))
    run(capsys, "sweep", "lambda", "--grid", "-3:3,-3:3,7x7", "--out", str(b), "--jobs", "3")
    assert a.read_bytes() == b.read_bytes()


def test_verify_report_schema(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--suite", "lambda", "--grid", "-2:2,-2:2,5x5", "--tol", "1e-9",
                        "--out", str(out))
    assert code == 0 and "failed" in text
    rep = json.loads(out.read_text())
    assert list(rep) == ["suite", "config", "started_at", "rows", "summary"]
    assert rep["config"]["rel_tol"] == 1e-9
    assert rep["started_at"] is None
    assert rep["summary"]["failed"] == 0
    assert rep["summary"]["total"] == len(rep["rows"])
    for row in rep["rows"]:
        lhs = complex(row["lhs"]["re"], row["lhs"]["im"])
        rhs = complex(row["rhs"]["re"], row["rhs"]["im"])
        abs_err = abs(lhs - rhs)
        rel = abs_err / abs(rhs) if rhs != 0 else abs_err
        assert row["rel_error"] == pytest.approx(rel, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("suite", ["beta", "bernoulli", "binomial"])
def test_verify_exact_suites(suite, capsys):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0 and " 0 failed" in out


def test_verify_abel_default_grid(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "abel_plana")
    assert code == 0 and " 0 failed" in out


def test_verify_nonconvergence_exit_code(capsys):
    # an unreachable tolerance with a tiny term budget
    code, _, err = run(capsys, "verify", "--suite", "lambda", "--grid", "2:3,0:1,2x2", "--max-terms", "64",
                       "--tol", "1e-300")
    assert code == 3 and "remainder" in err


def test_verify_failed_row_exit_code(monkeypatch, capsys):
    from muzeta import cli
    from muzeta.report import IdentityReport

    bad = IdentityReport.build("fake", 0.5 + 0j, 1.0, 2.0, 1e-9)
    monkeypatch.setattr(cli, "run", lambda *a, **k: [bad])
    code, out, _ = run(capsys, "verify", "--suite", "beta")
    assert code == 1 and "FAIL fake" in out


def test_verify_timestamp(tmp_path, capsys):
    out = tmp_path / "t.json"
    run(capsys, "verify", "--suite", "beta", "--out", str(out), "--timestamp")
    assert json.loads(out.read_text())["started_at"].endswith("Z")
