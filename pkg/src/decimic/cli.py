"""Command line entry point.

Results go to stdout as JSON (``schema: 1``, big integers as strings); logs and a
short human summary go to stderr.  Exit codes: 0 all checks passed, 1 a check
failed, 2 usage error, 3 a search ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import basisearch as B
from . import catalog as C
from . import hilbert as H
from . import nullcone as N
from . import reference as REF
from .binforms import pretty
from .modlin import PrimeField
from .polyring import Polynomial, to_text

log = logging.getLogger("decimic")

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _num(x) -> str | int:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and abs(x) >= 2 ** 53:
        return str(x)
    return x


def _emit(payload: dict) -> None:
    payload = {"schema": 1, **payload}
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")


def _prime(text: str) -> int:
    try:
        p = int(text)
        PrimeField(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_poincare(args) -> int:
    table = H.poincare_table(args.n, args.max)
    _emit({"command": "poincare", "n": args.n, "max": args.max,
           "coefficients": [_num(c) for c in table.coeffs]})
    return OK


def cmd_numerator(args) -> int:
    degrees = tuple(args.degrees) if args.degrees else H.DECIMIC_HSOP_DEGREES
    table = H.poincare_table(args.n, args.max)
    try:
        num = H.numerator(table, degrees)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bound = H.degree_bound(num)
    coeffs = list(num.coeffs)
    palindromic = all(num[j] == num[bound - j] for j in range(bound + 1))
    _emit({"command": "numerator", "n": args.n, "degrees": list(degrees), "max": args.max,
           "coefficients": [_num(c) for c in coeffs],
           "nonzero": {str(j): _num(c) for j, c in num.nonzero().items()},
           "degree_bound": bound, "palindromic": palindromic,
           "first_zero_multiple_of_6": H.first_zero_multiple(num, 6)})
    return OK


def cmd_catalog(args) -> int:
    cat = C.build_decimic_catalog()
    if args.dump:
        sym = C.canonical(args.dump)
        if sym not in cat:
            raise UsageError(f"unknown symbol {args.dump!r}")
        entry = cat[sym]
        form = entry.expansion
        coeffs = [to_text(c) for c in form.coeffs]
        _emit({"command": "catalog", "symbol": sym, "recipe": str(entry.recipe), "order": entry.order,
               "degree": entry.degree, "coefficients_x_to_y": coeffs})
        print(pretty(form), file=sys.stderr)
        return OK
    rows = [{"symbol": s, "recipe": str(e.recipe), "order": e.order, "degree": e.degree}
            for s, e in cat.items()]
    _emit({"command": "catalog", "entries": rows})
    return OK


def _eval_form_file(args) -> int:
    from .binforms import BinaryForm, form_from_json

    try:
        form = form_from_json(json.loads(Path(args.form).read_text()))
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read form from {args.form}: {exc}") from None
    sym = C.canonical(args.invariant)
    if sym not in C.INVARIANTS:
        raise UsageError(f"unknown invariant {args.invariant!r}")
    if form.order != 10:
        raise UsageError(f"expected a form of order 10, got {form.order}")
    # transvectants of integral forms can leave ZZ
    ring = form.coeffs[0].ring.with_domain("QQ")
    form = BinaryForm(form.order, tuple(c.to_ring(ring) for c in form.coeffs), form.degree)
    val = C.evaluate_on(C.INVARIANTS[sym], form).invariant_value()
    if isinstance(val, Polynomial):
        if not val.is_constant():
            raise UsageError("the form has symbolic coefficients")
        val = val.constant_value()
    if args.prime is not None:
        val = Fraction(val)
        val = val.numerator * pow(val.denominator, -1, args.prime) % args.prime
    _emit({"command": "eval", "invariant": sym, "form": str(args.form), "prime": args.prime, "value": str(val)})
    return OK


def cmd_eval(args) -> int:
    if args.form:
        return _eval_form_file(args)
    coeffs = [Fraction(t) for t in args.coeffs.split(",")]
    if len(coeffs) != 11:
        raise UsageError("--coeffs needs 11 values a0..a10")
    coeffs = [int(c) if c.denominator == 1 else c for c in coeffs]
    if args.prime is not None and any(isinstance(c, Fraction) for c in coeffs):
        raise UsageError("modular evaluation needs integer coefficients")
    try:
        val = C.eval_invariant(args.invariant, coeffs, modulus=args.prime, method=args.method)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    _emit({"command": "eval", "invariant": C.canonical(args.invariant), "coeffs": [_num(c) for c in coeffs],
           "prime": args.prime, "value": str(val)})
    return OK


def _search_ceiling(args) -> int:
    if args.exhaustive:
        return 48
    if args.deep:
        return max(args.max_degree, 21)
    return args.max_degree


def cmd_search(args) -> int:
    top = _search_ceiling(args)
    directory = Path(args.resume) if args.resume else None
    if directory is not None and (directory / "state.json").exists():
        search = B.BasisSearch.load(directory, max_degree=top)
        if search.p != args.prime or search.seed != args.seed:
            raise UsageError("checkpoint was written with a different prime or seed")
    else:
        search = B.BasisSearch(p=args.prime, seed=args.seed, max_degree=top, mode=args.mode,
                               budget_factor=args.budget_factor, min_budget=args.min_budget)
    search.run(top, checkpoint=directory)
    reports = [r.as_dict() for _, r in sorted(search.reports.items()) if r.m <= top]
    complete = search.completed() >= top
    _emit({"command": "search", "prime": args.prime, "seed": args.seed, "mode": search.mode,
           "max_degree": top, "status": "complete" if complete else "incomplete",
           "d": {str(m): d for m, d in search.d_table().items() if m <= top},
           "total_basic": sum(d for m, d in search.d_table().items() if m <= top),
           "degrees": reports,
           "generators": {name: str(g.expr) for name, g in search.generators.items() if g.degree <= top}})
    for r in reports:
        print(f"m={r['m']:2d} target={r['target']:5d} rank={r['rank']:5d} d_m={r['d_m']:3d} {r['status']}",
              file=sys.stderr)
    return OK if complete else BUDGET


def ideal_dimension(selection_text: str, degree: int, prime: int, seed: int) -> dict:
    selection = B.parse_selection(selection_text)
    if not selection:
        raise UsageError("empty selection")
    need = degree - min(selection)
    search = B.BasisSearch(p=prime, seed=seed, max_degree=degree)
    search.run(need)
    if search.completed() < need:
        return {"status": "incomplete", "searched_through": search.completed()}
    dim = search.graded_ideal_dimension(selection, degree)
    target = B.target_dim(degree)
    return {"status": "complete", "dimension": dim, "target": target, "full": dim == target}


def cmd_ideal_dim(args) -> int:
    try:
        res = ideal_dimension(args.select, args.degree, args.prime, args.seed)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit({"command": "ideal-dim", "select": args.select, "degree": args.degree, "prime": args.prime,
           "seed": args.seed, **res})
    if res["status"] != "complete":
        return BUDGET
    return OK if res["full"] else FAILED


def cmd_nullcone_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    rep = N.verify_hsop_defines_nullcone(args.n, args.samples, rng)
    _emit({"command": "nullcone-verify", "seed": args.seed, **rep.as_dict()})
    return OK if rep.ok else FAILED


def jerzy_sampling(samples: int, seed: int) -> dict:
    """Forms with a planted high-multiplicity root plus random forms, every admissible k."""
    rng = np.random.default_rng(seed)
    tested = violations = hyp = 0
    bad = []
    for _ in range(samples):
        d = int(rng.integers(2, 11))
        j = int(rng.integers(1, d + 1))
        f = _planted(d, j, rng)
        for k in range(1, d + 2):
            if not (d >= 4 * k - 4):
                continue
            res = N.jerzy_predicate(f, k)
            tested += 1
            hyp += res["hypothesis"]
            if res["hypothesis"] and not res["conclusion"]:
                violations += 1
                bad.append({"coeffs": [str(c) for c in f.coeffs], "k": k})
    return {"samples": samples, "predicate_evaluations": tested, "hypothesis_true": hyp,
            "violations": violations, "counterexamples": bad}


def _planted(d: int, j: int, rng) -> "N.BinaryForm":
    while True:
        u, v = (int(t) for t in rng.integers(-3, 4, size=2))
        if u or v:
            break
    g = [int(t) for t in rng.integers(-3, 4, size=d - j + 1)]
    if not any(g):
        g[0] = 1
    coeffs = g
    for _ in range(j):
        coeffs = N._poly_mul(coeffs, [u, v])
    return N.NumericBinaryForm(coeffs)


def cmd_lemma_check(args) -> int:
    if args.which == "8":
        ids = N.quartic_sextic_pair_identities()
        ok = all(i.ok for i in ids)
        _emit({"command": "lemma-check", "which": "8", "identities": [i.as_dict() for i in ids], "ok": ok})
    elif args.which == "7":
        rep = N.specialized_k_case_check()
        ok = rep.ok
        _emit({"command": "lemma-check", "which": "7", **rep.as_dict()})
    else:
        res = jerzy_sampling(args.samples, args.seed)
        ok = res["violations"] == 0
        _emit({"command": "lemma-check", "which": "jerzy", "seed": args.seed, **res, "ok": ok})
    return OK if ok else FAILED


def cmd_exceptional_forms(args) -> int:
    reps = N.exceptional_forms_check()
    ok = all(r.ok for r in reps)
    _emit({"command": "exceptional-forms", "forms": [r.as_dict() for r in reps], "ok": ok})
    return OK if ok else FAILED


def cmd_groebner_check(args) -> int:
    domain = "QQ" if args.domain == "QQ" else _prime(args.domain)
    claims = N.membership_claims(domain)
    names = list(N.CLAIM_NAMES) if args.claim == "all" else [args.claim]
    results = []
    for short in names:
        ok, detail = claims[N.CLAIM_NAMES[short]]()
        results.append({"claim": short, "statement": N.CLAIM_NAMES[short], "ok": ok, "detail": detail})
    ok = all(r["ok"] for r in results)
    _emit({"command": "groebner-check", "domain": str(domain), "results": results, "ok": ok})
    return OK if ok else FAILED


def verify_all(tier: str, seed: int = 0) -> dict:
    """Every default-tier check against the published values; returns name -> bool."""
    from .polyring import from_text

    out: dict[str, bool] = {}
    out["poincare"] = H.poincare_table(10, 48).coeffs == REF.POINCARE_10
    num = H.numerator(H.poincare_table(10, 58), H.DECIMIC_HSOP_DEGREES)
    out["numerator"] = num.nonzero() == REF.NUMERATOR_10 and H.degree_bound(num) == 48
    cat = C.build_decimic_catalog()
    R = cat["j2"].polynomial.ring
    k = cat["k"].expansion.coeffs
    q = cat["q"].expansion.coeffs
    out["catalog"] = (from_text(R, REF.J2_TEXT) == cat["j2"].polynomial
                      and all(from_text(R, t) == k[4 - i] for i, t in enumerate(REF.K_TEXT))
                      and all(from_text(R, t) == q[8 - i] for i, t in enumerate(REF.Q_TEXT)))
    search = B.BasisSearch(p=109, seed=seed, max_degree=14)
    search.run(14)
    want = {m: d for m, d in REF.BASIC_COUNTS.items() if m <= 14}
    out["search"] = search.completed() >= 14 and search.d_table() == want
    for m in (20, 24):
        sel, dim = REF.IDEAL_DIMENSIONS[m]
        res = ideal_dimension(sel, m, 197, seed)
        out[f"ideal-dim-{m}"] = res.get("dimension") == dim
    for short, name in N.CLAIM_NAMES.items():
        out[f"groebner-{short}"] = N.membership_claims("QQ")[name]()[0]
    out["exceptional-forms"] = all(r.ok for r in N.exceptional_forms_check())
    out["pair-identities"] = all(i.ok for i in N.quartic_sextic_pair_identities())
    out["k-specialization"] = N.specialized_k_case_check().ok
    for n in (2, 4, 6, 8, 10):
        out[f"nullcone-{n}"] = N.verify_hsop_defines_nullcone(n, 100, np.random.default_rng([seed, n])).ok
    out["jerzy"] = jerzy_sampling(200, seed)["violations"] == 0
    if tier == "deep":
        deep = B.BasisSearch(p=109, seed=seed, max_degree=19)
        deep.run(19)
        out["search-deep"] = deep.d_table() == {m: d for m, d in REF.BASIC_COUNTS.items() if m <= 19}
    return out


def cmd_verify_all(args) -> int:
    results = {}
    for name, ok in verify_all(args.tier, args.seed).items():
        results[name] = ok
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
    ok = all(results.values())
    _emit({"command": "verify-all", "tier": args.tier, "results": results, "ok": ok})
    return OK if ok else FAILED


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decimic", description="Invariants of the binary decimic")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poincare", help="dim I_m for m = 0..max")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--max", type=int, default=48)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("numerator", help="numerator of the Poincare series over an hsop denominator")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--max", type=int, default=58)
    p.add_argument("--degrees", type=_int_list, default=None, help="hsop degrees, e.g. 2,4,6,6,8,9,10,14")
    p.set_defaults(func=cmd_numerator)

    p = sub.add_parser("catalog", help="named covariants and invariants")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--dump", metavar="SYMBOL")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("eval", help="evaluate a catalog invariant at a0..a10")
    p.add_argument("--invariant", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="a0..a10, comma separated")
    src.add_argument("--form", metavar="FILE", help="decimic in the JSON polynomial format (order, degree, terms)")
    p.add_argument("--prime", type=_prime, default=None)
    p.add_argument("--method", choices=("recipe", "expansion"), default="recipe")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("search", help="count basic invariants degree by degree")
    p.add_argument("--max-degree", type=int, default=16)
    p.add_argument("--prime", type=_prime, default=109)
    p.add_argument("--seed", type=int, default=0)
    tier = p.add_mutually_exclusive_group()
    tier.add_argument("--deep", action="store_true", help="continue to degree 21")
    tier.add_argument("--exhaustive", action="store_true", help="continue to degree 48 (long)")
    p.add_argument("--resume", metavar="DIR", help="checkpoint directory (created and resumed)")
    p.add_argument("--mode", choices=("points", "monomial"), default="points")
    p.add_argument("--budget-factor", type=int, default=10, help="candidates per unit of target dimension")
    p.add_argument("--min-budget", type=int, default=40, help="candidate floor per degree")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("ideal-dim", help="graded dimension of an ideal of invariants")
    p.add_argument("--select", required=True, help='degrees with optional named generators, e.g. "4,6,8,9,10=j10,14"')
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--prime", type=_prime, default=197)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ideal_dim)

    p = sub.add_parser("nullcone-verify", help="hsop invariants against sampled nullforms")
    p.add_argument("--n", type=int, choices=(2, 4, 6, 8, 10), default=10)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_nullcone_verify)

    p = sub.add_parser("lemma-check", help="symbolic case analyses and the multiplicity criterion")
    p.add_argument("--which", choices=("7", "8", "jerzy"), required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("exceptional-forms", help="the two forms separating j14 and A14")
    p.set_defaults(func=cmd_exceptional_forms)

    p = sub.add_parser("groebner-check", help="ideal membership facts for the k = 0 case")
    p.add_argument("--claim", choices=tuple(N.CLAIM_NAMES) + ("all",), default="all")
    p.add_argument("--domain", default="QQ", help="QQ or a prime")
    p.set_defaults(func=cmd_groebner_check)

    p = sub.add_parser("verify-all", help="run every check of a tier")
    p.add_argument("--tier", choices=("default", "deep"), default="default")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"decimic: error: {exc}", file=sys.stderr)
        return USAGE
    except argparse.ArgumentTypeError as exc:
        print(f"decimic: error: {exc}", file=sys.stderr)
        return USAGE
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
