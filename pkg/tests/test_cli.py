import contextlib
import io
import json
import subprocess
import sys

import pytest

from decimic import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv)
    return code, json.loads(out)


def test_poincare_small_form():
    code, out = run_json("poincare", "--n", "4", "--max", "6")
    assert code == 0 and out["schema"] == 1
    assert out["coefficients"] == [1, 0, 1, 1, 1, 1, 2]


def test_numerator_with_explicit_degrees_and_short_table():
    code, out = run_json("numerator", "--degrees", "2,4,6,6,8,9,10,14")
    assert code == 0 and out["degree_bound"] == 48 and out["first_zero_multiple_of_6"] == 54
    code, _, err = run("numerator", "--max", "30")
    assert code == 2 and "error" in err


def test_eval_exact_and_modular():
    pt = ",".join(["1"] + ["0"] * 9 + ["1"])
    assert run_json("eval", "--invariant", "j2", "--coeffs", pt)[1]["value"] == "2"
    code, out = run_json("eval", "--invariant", "j_2", "--coeffs", pt, "--prime", "109")
    assert code == 0 and out["value"] == "2" and out["invariant"] == "j2"
    assert run("eval", "--invariant", "j2", "--coeffs", "1,2")[0] == 2
    assert run("eval", "--invariant", "nope", "--coeffs", pt)[0] == 2
    assert run("eval", "--invariant", "j2", "--coeffs", pt, "--prime", "100")[0] == 2


def test_catalog_listing_and_dump():
    code, out = run_json("catalog", "--list")
    assert code == 0 and {"j2", "k", "A14"} <= {e["symbol"] for e in out["entries"]}
    code, out = run_json("catalog", "--dump", "k")
    assert code == 0 and out["order"] == 4 and len(out["coefficients_x_to_y"]) == 5
    assert run("catalog", "--dump", "zzz")[0] == 2


def test_search_is_byte_identical_across_runs():
    a = run("search", "--max-degree", "10", "--seed", "3")
    b = run("search", "--max-degree", "10", "--seed", "3")
    assert a[0] == 0 and a[1] == b[1]
    out = json.loads(a[1])
    assert out["status"] == "complete" and out["total_basic"] == 1 + 1 + 4 + 5 + 5 + 8


def test_search_budget_exit_code():
    code, out = run_json("search", "--max-degree", "8", "--budget-factor", "0", "--min-budget", "0")
    assert code == 3 and out["status"] == "incomplete"


def test_search_resume(tmp_path):
    first = run_json("search", "--max-degree", "9", "--resume", str(tmp_path))
    assert first[0] == 0 and (tmp_path / "state.json").exists()
    resumed = run_json("search", "--max-degree", "12", "--resume", str(tmp_path))
    fresh = run_json("search", "--max-degree", "12")
    assert resumed[1]["d"] == fresh[1]["d"]
    assert run("search", "--max-degree", "12", "--resume", str(tmp_path), "--seed", "5")[0] == 2


def test_ideal_dim_codes():
    code, out = run_json("ideal-dim", "--select", "4", "--degree", "8")
    # j4^2 alone cannot fill the degree 8 part
    assert code == 1 and out["dimension"] == 1 and out["target"] == 6
    assert run("ideal-dim", "--select", "4=j9", "--degree", "12")[0] == 2
    assert run("ideal-dim", "--select", "", "--degree", "12")[0] == 2


def test_checks_pass():
    assert run_json("nullcone-verify", "--n", "6", "--samples", "10")[0] == 0
    for which in ("7", "8"):
        code, out = run_json("lemma-check", "--which", which)
        assert code == 0 and out["ok"]
    code, out = run_json("lemma-check", "--which", "jerzy", "--samples", "20")
    assert code == 0 and out["violations"] == 0
    code, out = run_json("exceptional-forms")
    assert code == 0 and out["ok"]
    code, out = run_json("groebner-check", "--claim", "J", "--domain", "32003")
    assert code == 0 and out["results"][0]["ok"]


def test_usage_errors():
    assert run()[0] == 2
    assert run("poincare", "--n", "x")[0] == 2
    assert run("groebner-check", "--claim", "nope")[0] == 2
    assert run("--help")[0] == 0


@pytest.mark.parametrize("argv,code", [(["poincare", "--max", "4"], 0), (["bogus"], 2)])
def test_console_script(argv, code):
    proc = subprocess.run([sys.executable, "-m", "decimic.cli", *argv], capture_output=True, text=True)
    assert proc.returncode == code
    if code == 0:
        assert json.loads(proc.stdout)["coefficients"] == [1, 0, 1, 0, 2]


def test_eval_form_file(tmp_path):
    from decimic.binforms import coefficient_ring, form_to_json, generic_form
    from decimic.catalog import decimic_from_a

    path = tmp_path / "f.json"
    path.write_text(json.dumps(form_to_json(decimic_from_a([2, 1, 0, 0, 0, 3, 0, 0, 0, 0, 5]))))
    by_file = run_json("eval", "--invariant", "j4", "--form", str(path))
    by_coeffs = run_json("eval", "--invariant", "j4", "--coeffs", "2,1,0,0,0,3,0,0,0,0,5")
    assert by_file[0] == 0 and by_file[1]["value"] == by_coeffs[1]["value"]
    mod = run_json("eval", "--invariant", "j4", "--form", str(path), "--prime", "109")[1]["value"]
    assert mod == run_json("eval", "--invariant", "j4", "--coeffs", "2,1,0,0,0,3,0,0,0,0,5",
                           "--prime", "109")[1]["value"]
    symbolic = tmp_path / "g.json"
    symbolic.write_text(json.dumps(form_to_json(generic_form(10, coefficient_ring(10)))))
    assert run("eval", "--invariant", "j2", "--form", str(symbolic))[0] == 2
    assert run("eval", "--invariant", "j2", "--form", str(tmp_path / "missing.json"))[0] == 2
    assert run("eval", "--invariant", "j2")[0] == 2
