"""Acceptance checks 1-9.

Run under pytest (one PASS/FAIL line per criterion is printed to the terminal) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import json
import sys
import time

import numpy as np
import pytest

from decimic import cli
from decimic import nullcone as N
from decimic import reference as REF
from decimic.binforms import apply_sl2, numeric_form, transvectant
from decimic.catalog import build_decimic_catalog, evaluate_on, generic_form
from decimic import expr as E
from decimic.hilbert import dim_invariants
from decimic.polyring import from_text

SEED = 0


def run_cli(*argv: str) -> tuple[int, dict]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(list(argv))
    return code, json.loads(out.getvalue())


# -- the criteria ---------------------------------------------------------------


def check_poincare():
    start = time.perf_counter()
    code, out = run_cli("poincare", "--n", "10", "--max", "48")
    elapsed = time.perf_counter() - start
    got = tuple(int(c) for c in out["coefficients"])
    ok = code == 0 and got == REF.POINCARE_10 and len(got) == 49 and elapsed < 1.0
    return ok, f"49 coefficients exact={got == REF.POINCARE_10}, {elapsed:.2f}s"


def check_numerator():
    start = time.perf_counter()
    code, out = run_cli("numerator")
    elapsed = time.perf_counter() - start
    coeffs = [int(c) for c in out["coefficients"]]
    nonzero = {j: c for j, c in enumerate(coeffs) if c}
    ok = (code == 0 and len(coeffs) == 59 and nonzero == REF.NUMERATOR_10 and len(nonzero) == 37
          and out["degree_bound"] == 48 and out["palindromic"]
          and all(coeffs[k] == coeffs[48 - k] for k in range(49)) and elapsed < 1.0)
    return ok, f"{len(nonzero)} nonzero, degree bound {out['degree_bound']}, {elapsed:.2f}s"


def check_catalog():
    start = time.perf_counter()
    cat = build_decimic_catalog()
    R = cat["j2"].polynomial.ring
    j2 = cat["j2"].polynomial == from_text(R, REF.J2_TEXT)
    k = cat["k"].expansion.coeffs
    k_ok = [from_text(R, t) for t in REF.K_TEXT] == [k[4 - i] for i in range(5)]
    q = cat["q"].expansion.coeffs
    q_ok = [from_text(R, t) for t in REF.Q_TEXT] == [q[8 - i] for i in range(9)]
    f = generic_form(10, R)
    x4 = list(evaluate_on(E.Tr(E.F, E.X4, 4), f).coeffs) == [from_text(R, t) for t in REF.F_X4_TEXT]
    x3y = list(evaluate_on(E.Tr(E.F, E.X3Y, 4), f).coeffs) == [from_text(R, t) for t in REF.F_X3Y_TEXT]
    elapsed = time.perf_counter() - start
    ok = j2 and k_ok and q_ok and x4 and x3y and elapsed < 10.0
    return ok, f"j2={j2} k={k_ok} q={q_ok} (f,x^4)_4={x4} (f,x^3y)_4={x3y}, {elapsed:.2f}s"


def _degree_table(prime: int):
    code, out = run_cli("search", "--max-degree", "14", "--prime", str(prime), "--seed", str(SEED))
    want = {str(m): d for m, d in REF.BASIC_COUNTS.items() if m <= 14}
    return code == 0 and out["status"] == "complete" and out["d"] == want, out["d"]


def check_degree_table():
    start = time.perf_counter()
    ok, table = _degree_table(109)
    elapsed = time.perf_counter() - start
    shown = " ".join(f"d{m}={d}" for m, d in sorted(table.items(), key=lambda kv: int(kv[0])) if d)
    return ok, f"{shown}, {elapsed:.1f}s"


def _ideal_dims(prime: int):
    res = {}
    for m in (24, 20):
        sel, want = REF.IDEAL_DIMENSIONS[m]
        code, out = run_cli("ideal-dim", "--select", sel, "--degree", str(m), "--prime", str(prime),
                            "--seed", str(SEED))
        res[m] = (code == 0 and out["dimension"] == want, out.get("dimension"))
    return res


def check_ideal_dims():
    start = time.perf_counter()
    res = _ideal_dims(197)
    elapsed = time.perf_counter() - start
    ok = all(v for v, _ in res.values())
    return ok, f"degree 24 -> {res[24][1]}, degree 20 -> {res[20][1]} (p=197), {elapsed:.1f}s"


def check_groebner():
    start = time.perf_counter()
    code, out = run_cli("groebner-check", "--claim", "all", "--domain", "QQ")
    elapsed = time.perf_counter() - start
    parts = ", ".join(f"{r['claim']}={r['ok']}" for r in out["results"])
    ok = code == 0 and out["ok"] and len(out["results"]) == 4 and elapsed < 300
    return ok, f"{parts}, {elapsed:.1f}s"


def check_exceptional_forms():
    start = time.perf_counter()
    reps = N.exceptional_forms_check()
    elapsed = time.perf_counter() - start
    survivors = {r.form: r.nonzero for r in reps}
    want = {"x^2y(2a1x^7+9a8y^7)": ["A14"], "y^3(120a3x^7+a10y^7)": ["j14"]}
    ok = survivors == want and all(r.sum_nonzero for r in reps) and elapsed < 60
    return ok, f"{survivors}, j14+A14 nonzero on both={all(r.sum_nonzero for r in reps)}, {elapsed:.1f}s"


def check_case_identities():
    start = time.perf_counter()
    pair = N.quartic_sextic_pair_identities()
    cases = N.specialized_k_case_check()
    elapsed = time.perf_counter() - start
    bad = [i.label for i in pair + cases.identities if not i.ok]
    ok = not bad and cases.ok and len(pair) == 8 and len(cases.identities) == 8 and elapsed < 60
    return ok, f"{len(pair) + len(cases.identities)} identities, failing={bad}, {elapsed:.1f}s"


def _transvectant_properties(rng) -> bool:
    def form(n):
        return numeric_form([int(c) for c in rng.integers(-6, 7, size=n + 1)])

    for _ in range(200):
        n, m = (int(t) for t in rng.integers(1, 7, size=2))
        k = int(rng.integers(0, min(n, m) + 1))
        f, f2, g = form(n), form(n), form(m)
        a, b = (int(t) for t in rng.integers(-4, 5, size=2))
        fg = transvectant(f, g, k)
        if fg.coeffs != tuple((-1) ** k * c for c in transvectant(g, f, k).coeffs):
            return False
        if transvectant(f * a + f2 * b, g, k).coeffs != (fg * a + transvectant(f2, g, k) * b).coeffs:
            return False
        t, s = (int(x) for x in rng.integers(-2, 3, size=2))
        M = [[1 + t * s, t], [s, 1]]
        if transvectant(apply_sl2(f, M), apply_sl2(g, M), k).coeffs != apply_sl2(fg, M).coeffs:
            return False
    return True


def check_property_suites():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    parts = {"transvectants": _transvectant_properties(rng)}
    parts["hsop"] = all(
        N.verify_hsop_defines_nullcone(n, 100, np.random.default_rng([SEED, n])).ok for n in (2, 4, 6, 8, 10))
    parts["multiplicity criterion"] = cli.jerzy_sampling(200, SEED)["violations"] == 0
    parts["hermite"] = all(dim_invariants(n, m) == dim_invariants(m, n)
                           for n in range(1, 13) for m in range(1, 13))
    table_109, _ = _degree_table(109)
    table_197, _ = _degree_table(197)
    dims_109 = {m: v for m, (v, _) in _ideal_dims(109).items()}
    dims_197 = {m: v for m, (v, _) in _ideal_dims(197).items()}
    parts["cross-prime"] = table_109 == table_197 and dims_109 == dims_197
    elapsed = time.perf_counter() - start
    return all(parts.values()), f"{parts}, {elapsed:.1f}s"


CRITERIA = [
    (1, "Poincare series", check_poincare),
    (2, "numerator", check_numerator),
    (3, "catalog expansions", check_catalog),
    (4, "basic invariant counts to degree 14", check_degree_table),
    (5, "graded ideal dimensions", check_ideal_dims),
    (6, "Groebner membership", check_groebner),
    (7, "exceptional forms", check_exceptional_forms),
    (8, "case identities", check_case_identities),
    (9, "property suites", check_property_suites),
]


def report(number: int, title: str, ok: bool, detail: str) -> str:
    return f"CRITERION {number}: {'PASS' if ok else 'FAIL'} ({title}) {detail}"


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + report(number, title, ok, detail))
    assert ok, detail


def main() -> int:
    failed = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(report(number, title, ok, detail), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
