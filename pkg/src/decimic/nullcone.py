"""Root multiplicities of binary forms, nullform tests, and the symbolic case checks
behind the nullcone description of the binary decimic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import expr as E
from .binforms import BinaryForm, coefficient_ring, generic_form, transvectant
from .catalog import COVARIANTS, INVARIANTS, NULLCONE_SET, FormBackend, evaluate_on, hsop
from .groebner import GroebnerBasis
from .polyring import Polynomial, Ring

Number = int | Fraction


# -- exact univariate helpers (coefficient lists, constant term first) -----------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: list) -> list:
    return _trim([i * p[i] for i in range(1, len(p))])


def _rem(a: list, b: list) -> list:
    a = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _trim(a)
    return a


def _gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return a
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _layers(p: list) -> list[list]:
    """``[p, gcd(p,p'), ...]`` down to a constant: layer ``t`` vanishes exactly at
    roots of multiplicity ``> t``."""
    out = [_trim(list(p))]
    while len(out[-1]) > 1:
        g = out[-1]
        out.append(_gcd(g, _deriv(g)))
    return out


# -- forms ---------------------------------------------------------------------


def NumericBinaryForm(coeffs: Sequence[Number]) -> BinaryForm:
    """A form with exact rational plain coefficients, listed from x^n to y^n."""
    cs = tuple(Fraction(c) if not isinstance(c, int) else c for c in coeffs)
    if len(cs) < 2:
        raise ValueError("a binary form needs order >= 1")
    return BinaryForm(len(cs) - 1, cs, 1)


@dataclass(frozen=True)
class MultiplicityReport:
    multiplicity: int
    root: tuple[Fraction, Fraction] | None = None  # (x : y) when the top root is rational and unique

    def linear_factor(self) -> tuple[Fraction, Fraction] | None:
        """(u, v) with u x + v y vanishing at the witnessing root."""
        if self.root is None:
            return None
        x0, y0 = self.root
        return (y0, -x0)


def _infinity_multiplicity(f: BinaryForm) -> int:
    # power of y dividing f: trailing zero coefficients from the x^n end
    j = 0
    while j <= f.order and f.coeffs[j] == 0:
        j += 1
    return j


def _affine(f: BinaryForm) -> list:
    # f(x, y) with roots (x : y) = (t : 1) -> polynomial in t, constant term first
    n = f.order
    return _trim([f.coeffs[n - i] for i in range(n + 1)])


def max_multiplicity(f: BinaryForm) -> MultiplicityReport:
    """Largest multiplicity of a root of ``f`` on the projective line."""
    if f.is_zero():
        raise ValueError("the zero form has no well-defined root multiplicity")
    inf = _infinity_multiplicity(f)
    layers = _layers(_affine(f))
    finite = len(layers) - 1
    if inf >= finite:
        return MultiplicityReport(inf, (Fraction(1), Fraction(0)) if inf else None)
    top = layers[finite - 1]
    if len(top) == 2:
        return MultiplicityReport(finite, (-Fraction(top[0]) / top[1], Fraction(1)))
    return MultiplicityReport(finite, None)


def is_nullform(f: BinaryForm) -> bool:
    if f.is_zero():
        return True
    return 2 * max_multiplicity(f).multiplicity > f.order


def is_pair_nullform(g: BinaryForm, h: BinaryForm) -> bool:
    """Common root of multiplicity > n/2 in ``g`` and > m/2 in ``h``."""
    if g.is_zero() or h.is_zero():
        raise ValueError("pair test needs nonzero forms")
    tg, th = g.order // 2 + 1, h.order // 2 + 1
    if _infinity_multiplicity(g) >= tg and _infinity_multiplicity(h) >= th:
        return True
    lg, lh = _layers(_affine(g)), _layers(_affine(h))
    if len(lg) <= tg or len(lh) <= th:
        return False
    return len(_gcd(lg[tg - 1], lh[th - 1])) > 1


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def random_nullform(n: int, rng: np.random.Generator, bound: int = 5) -> BinaryForm:
    """``l^(n//2+1) * g`` with ``l`` a random linear form not dividing ``g``."""
    if n < 2:
        raise ValueError("need n >= 2")
    j = n // 2 + 1
    while True:
        u, v = (int(t) for t in rng.integers(-bound, bound + 1, size=2))
        if u or v:
            break
    # coefficient lists here run x^deg .. y^deg
    while True:
        g = [int(t) for t in rng.integers(-bound, bound + 1, size=n - j + 1)]
        # l = u x + v y vanishes at (x, y) = (v, -u)
        val = sum(c * v ** (n - j - i) * (-u) ** i for i, c in enumerate(g))
        if any(g) and val != 0:
            break
    coeffs = g
    for _ in range(j):
        coeffs = _poly_mul(coeffs, [u, v])
    return NumericBinaryForm(coeffs)


def random_form(n: int, rng: np.random.Generator, bound: int = 5) -> BinaryForm:
    return NumericBinaryForm([int(t) for t in rng.integers(-bound, bound + 1, size=n + 1)])


# -- system of parameters versus the nullcone --------------------------------------


@dataclass
class HsopReport:
    n: int
    nullforms: int = 0
    nullform_failures: list = field(default_factory=list)
    others: int = 0
    other_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nullform_failures and not self.other_failures

    def as_dict(self) -> dict:
        return {"n": self.n, "nullforms": self.nullforms, "nullform_failures": self.nullform_failures,
                "non_nullforms": self.others, "non_nullform_failures": self.other_failures, "ok": self.ok}


def _hsop_values(n: int, f: BinaryForm) -> list:
    params = hsop(n)
    memo: dict = {}
    backend = FormBackend(f)
    return [E.evaluate(rec, backend, memo).invariant_value() for rec in params.recipes]


def verify_hsop_defines_nullcone(n: int, samples: int, rng: np.random.Generator) -> HsopReport:
    """Nullforms must kill every hsop invariant (exact check); random non-nullforms
    should not (sampled evidence only)."""
    if n not in (2, 4, 6, 8, 10):
        raise ValueError("hsop recorded only for n in {2,4,6,8,10}")
    rep = HsopReport(n)
    for _ in range(samples):
        f = random_nullform(n, rng)
        rep.nullforms += 1
        vals = _hsop_values(n, f)
        if any(vals):
            rep.nullform_failures.append([str(c) for c in f.coeffs])
    for _ in range(samples):
        f = random_form(n, rng)
        if is_nullform(f):
            continue
        rep.others += 1
        if not any(_hsop_values(n, f)):
            rep.other_failures.append([str(c) for c in f.coeffs])
    return rep


# -- symbolic case checks ----------------------------------------------------------


def proportionality(lhs: Polynomial, rhs: Polynomial) -> Fraction | None:
    """The scalar c with lhs == c * rhs, or None if there is none (or it is 0)."""
    if not lhs or not rhs:
        return None
    mono = max(rhs.terms)
    if mono not in lhs.terms:
        return None
    c = Fraction(lhs.terms[mono]) / Fraction(rhs.terms[mono])
    return c if lhs == rhs * c else None


@dataclass
class Identity:
    label: str
    lhs: Polynomial
    rhs: Polynomial

    @property
    def scalar(self) -> Fraction | None:
        return proportionality(self.lhs, self.rhs)

    @property
    def ok(self) -> bool:
        return self.scalar is not None

    def as_dict(self) -> dict:
        s = self.scalar
        return {"identity": self.label, "ok": self.ok, "scalar": None if s is None else str(s)}


def _form(ring: Ring, coeffs: Sequence, degree: int = 1) -> BinaryForm:
    return BinaryForm(len(coeffs) - 1, tuple(ring.constant(c) if not isinstance(c, Polynomial) else c
                                             for c in coeffs), degree)


def quartic_sextic_pair_identities() -> list[Identity]:
    """Proportionalities for the quartic/sextic pair k = x^3(a1 x + a2 y),
    m = y^4(b1 x^2 + b2 x y + b3 y^2)."""
    R = Ring(("a1", "a2", "b1", "b2", "b3"), "QQ")
    a1, a2, b1, b2, b3 = R.gens()
    z = R.zero
    tv = transvectant

    def build(a1, a2, b1):
        k = _form(R, [a1, a2, z, z, z])
        m = _form(R, [z, z, z, z, b1, b2, b3])
        k2 = k * k
        kk2 = tv(k, k, 2)
        mm2 = tv(m, m, 2)
        return {
            "((m,m)_4,k)_4": tv(tv(m, m, 4), k, 4),
            "((m,m)_2,k^2)_8": tv(mm2, k2, 8),
            "((m,k)_1,k^2)_8": tv(tv(m, k, 1), k2, 8),
            "((k,k)_2^2,(m,m)_2)_8": tv(kk2 * kk2, mm2, 8),
            "(m^2,k^3)_12": tv(m * m, k2 * k, 12),
        }

    def val(d, key):
        return d[key].invariant_value()

    top = build(a1, a2, b1)
    c1 = build(z, a2, b1)
    c2 = build(a1, a2, z)
    return [
        Identity("((m,m)_4,k)_4 ~ a1 b1^2", val(top, "((m,m)_4,k)_4"), a1 * b1 * b1),
        Identity("a1=0: ((m,m)_2,k^2)_8 ~ a2^2 b1^2", val(c1, "((m,m)_2,k^2)_8"), a2 * a2 * b1 * b1),
        Identity("a1=0: ((m,k)_1,k^2)_8 ~ a2^3 b3", val(c1, "((m,k)_1,k^2)_8"), a2 ** 3 * b3),
        Identity("a1=0: ((k,k)_2^2,(m,m)_2)_8 ~ a2^4 (5 b2^2 - 12 b1 b3)",
                 val(c1, "((k,k)_2^2,(m,m)_2)_8"), a2 ** 4 * (b2 * b2 * 5 - b1 * b3 * 12)),
        Identity("b1=0: ((m,m)_2,k^2)_8 ~ a1^2 b2^2", val(c2, "((m,m)_2,k^2)_8"), a1 * a1 * b2 * b2),
        Identity("b1=0: ((m,k)_1,k^2)_8 ~ a2^3 b3", val(c2, "((m,k)_1,k^2)_8"), a2 ** 3 * b3),
        Identity("b1=0: ((k,k)_2^2,(m,m)_2)_8 ~ a2^4 b2^2", val(c2, "((k,k)_2^2,(m,m)_2)_8"), a2 ** 4 * b2 * b2),
        Identity("b1=0: (m^2,k^3)_12 ~ a1 (a2^2 b2^2 - 11 a1 a2 b2 b3 + 22 a1^2 b3^2)",
                 val(c2, "(m^2,k^3)_12"),
                 a1 * (a2 * a2 * b2 * b2 - a1 * a2 * b2 * b3 * 11 + a1 * a1 * b3 * b3 * 22)),
    ]


def replace_subtree(expr: E.Expr, old: E.Expr, new: E.Expr) -> E.Expr:
    """``expr`` with every occurrence of ``old`` replaced by ``new``."""
    if expr == old:
        return new
    if isinstance(expr, E.Tr):
        return E.Tr(replace_subtree(expr.left, old, new), replace_subtree(expr.right, old, new), expr.k)
    if isinstance(expr, E.Mul):
        return E.Mul(replace_subtree(expr.left, old, new), replace_subtree(expr.right, old, new))
    if isinstance(expr, E.Add):
        return E.Add(replace_subtree(expr.left, old, new), replace_subtree(expr.right, old, new))
    return expr


def _specialize(symbol: str, k_form: E.Expr) -> E.Expr:
    return replace_subtree(INVARIANTS[symbol], COVARIANTS["k"][0], k_form)


@dataclass
class CaseReport:
    identities: list[Identity]
    expansions: list[tuple[str, bool]]
    memberships: list[tuple[str, bool]]

    @property
    def ok(self) -> bool:
        return (all(i.ok for i in self.identities) and all(ok for _, ok in self.expansions)
                and all(ok for _, ok in self.memberships))

    def as_dict(self) -> dict:
        return {"identities": [i.as_dict() for i in self.identities],
                "expansions": [{"check": s, "ok": ok} for s, ok in self.expansions],
                "memberships": [{"check": s, "ok": ok} for s, ok in self.memberships],
                "ok": self.ok}


def specialized_k_case_check() -> CaseReport:
    """Decimic case analysis with k specialized to x^4 or x^3 y."""
    R = coefficient_ring(10, "QQ")
    a = {i: R.gen(f"a{i}") for i in range(11)}
    f = generic_form(10, R)
    memo: dict = {}

    def inv(symbol, kf):
        return evaluate_on(_specialize(symbol, kf), f, memo).invariant_value()

    ids = [
        Identity("k=x^4: A12 ~ a10^2", inv("A12", E.X4), a[10] * a[10]),
        Identity("k=x^4: j10 ~ -a9^2 + a8 a10", inv("j10", E.X4), a[8] * a[10] - a[9] * a[9]),
        Identity("k=x^4: j8 ~ 3 a8^2 - 4 a7 a9 + a6 a10", inv("j8", E.X4),
                 a[8] * a[8] * 3 - a[7] * a[9] * 4 + a[6] * a[10]),
        Identity("k=x^4: A6 ~ -10 a7^2 + 15 a6 a8 - 6 a5 a9 + a4 a10", inv("A6", E.X4),
                 a[6] * a[8] * 15 - a[7] * a[7] * 10 - a[5] * a[9] * 6 + a[4] * a[10]),
        Identity("k=x^3y: j9 ~ a9", inv("j9", E.X3Y), a[9]),
        Identity("k=x^3y: A14 ~ a7 a9 - a8^2", inv("A14", E.X3Y), a[7] * a[9] - a[8] * a[8]),
        Identity("k=x^3y: j10 ~ -5 a7^2 + 2 a6 a8 + 3 a5 a9", inv("j10", E.X3Y),
                 a[6] * a[8] * 2 - a[7] * a[7] * 5 + a[5] * a[9] * 3),
        Identity("k=x^3y: A6 ~ -10 a6^2 + 15 a5 a7 - 6 a4 a8 + a3 a9", inv("A6", E.X3Y),
                 a[5] * a[7] * 15 - a[6] * a[6] * 10 - a[4] * a[8] * 6 + a[3] * a[9]),
    ]

    from .polyring import substitute

    k = evaluate_on(COVARIANTS["k"][0], f, memo)
    j2 = evaluate_on(INVARIANTS["j2"], f, memo).invariant_value()
    expansions = []
    # k with a7 = ... = a10 = 0, coefficients listed y^4 first
    kill = {f"a{i}": 0 for i in range(7, 11)}
    expected = [
        a[6] * a[6] * 70,
        a[5] * a[6] * 56,
        a[5] * a[5] * 168 - a[4] * a[6] * 252,
        a[4] * a[5] * 56 - a[3] * a[6] * 112,
        a[4] * a[4] * 70 - a[3] * a[5] * 112 + a[2] * a[6] * 56,
    ]
    got = [substitute(k.coeffs[4 - i], kill) for i in range(5)]
    expansions.append(("k after a7=..=a10=0 matches the expected five terms", got == expected))
    kill = {f"a{i}": 0 for i in range(6, 10)}
    expected = [
        a[2] * a[10] * 2,
        a[1] * a[10] * 4,
        a[5] * a[5] * 168 + a[0] * a[10] * 2,
        a[4] * a[5] * 56,
        a[4] * a[4] * 70 - a[3] * a[5] * 112,
    ]
    got = [substitute(k.coeffs[4 - i], kill) for i in range(5)]
    expansions.append(("k after a6=..=a9=0 matches the expected five terms", got == expected))
    j2_cut = substitute(j2, kill)
    expansions.append(("j2 after a6=..=a9=0 is -252 a5^2 + 2 a0 a10",
                       j2_cut == a[0] * a[10] * 2 - a[5] * a[5] * 252))
    # the two vanishing conditions force a5 = 0 (a5^2 lies in the ideal they generate)
    cond = [a[5] * a[5] * 168 + a[0] * a[10] * 2, a[0] * a[10] * 2 - a[5] * a[5] * 252]
    G = GroebnerBasis(cond)
    memberships = [("a5^2 in (168 a5^2 + 2 a0 a10, -252 a5^2 + 2 a0 a10)", G.contains(a[5] * a[5])),
                   ("a5 not in that ideal (only its square)", not G.contains(a[5]))]
    return CaseReport(ids, expansions, memberships)


# -- the exceptional forms ------------------------------------------------------------


EXCEPTIONAL_FORMS = {
    # f = x^2 y (2 a1 x^7 + 9 a8 y^7): the only survivor is A14
    "x^2y(2a1x^7+9a8y^7)": (("a1", "a8"), {1: ("a1", 2), 8: ("a8", 9)}, "A14"),
    # f = y^3 (120 a3 x^7 + a10 y^7): the only survivor is j14
    "y^3(120a3x^7+a10y^7)": (("a3", "a10"), {3: ("a3", 120), 10: ("a10", 1)}, "j14"),
}


@dataclass
class ExceptionalReport:
    form: str
    expected: str
    nonzero: list[str]
    sum_nonzero: bool

    @property
    def ok(self) -> bool:
        return self.nonzero == [self.expected] and self.sum_nonzero

    def as_dict(self) -> dict:
        return {"form": self.form, "expected_survivor": self.expected, "nonzero": self.nonzero,
                "j14+A14_nonzero": self.sum_nonzero, "ok": self.ok}


def exceptional_forms_check() -> list[ExceptionalReport]:
    out = []
    for label, (names, coeffs, survivor) in EXCEPTIONAL_FORMS.items():
        R = Ring(names, "QQ")
        cs = [R.zero] * 11
        for idx, (v, c) in coeffs.items():
            cs[idx] = R.gen(v) * c
        f = BinaryForm(10, tuple(cs), 1)
        memo: dict = {}
        values = {s: evaluate_on(INVARIANTS[s], f, memo).invariant_value() for s in NULLCONE_SET}
        nonzero = [s for s in NULLCONE_SET if values[s]]
        total = evaluate_on(INVARIANTS["j14+A14"], f, memo).invariant_value()
        out.append(ExceptionalReport(label, survivor, nonzero, bool(total)))
    return out


# -- root multiplicity from vanishing transvectants ---------------------------------


def jerzy_predicate(f: BinaryForm, k: int) -> dict:
    """Hypothesis: the listed transvectants of ``f`` vanish; conclusion: a root of
    multiplicity ``>= d - k + 1``."""
    d = f.order
    if d < 4 * k - 4:
        raise ValueError(f"need d >= 4k - 4 (d={d}, k={k})")
    if k < 1:
        raise ValueError("need k >= 1")
    vanish = [transvectant(f, f, j) for j in range(2 * k, d + 1, 2)]
    if d == 4 * k - 4:
        vanish.append(transvectant(transvectant(f, f, 2 * k - 2), f, d))
    hypothesis = all(t.is_zero() for t in vanish)
    conclusion = f.is_zero() or max_multiplicity(f).multiplicity >= d - k + 1
    return {"hypothesis": hypothesis, "conclusion": conclusion}


# -- Groebner membership claims used for the k = 0 case -------------------------------


def _coeffs(symbol: str, domain) -> list[Polynomial]:
    from .catalog import build_decimic_catalog

    e = build_decimic_catalog()[symbol].expansion
    return [c.to_ring(c.ring.with_domain(domain)) for c in e.coeffs]


def membership_claims(domain="QQ") -> dict[str, callable]:
    """Named ideal-membership facts; each callable returns (ok, detail dict)."""

    def base():
        return _coeffs("j2", domain) + _coeffs("k", domain)

    def in_I():
        G = GroebnerBasis(base())
        res = {s: G.contains(_coeffs(s, domain)[0]) for s in ("A4", "A8", "A10")}
        return all(res.values()), res

    def b12():
        G = GroebnerBasis(base() + _coeffs("B6", domain), max_degree=12)
        res = {"B12": G.contains(_coeffs("B12", domain)[0])}
        return all(res.values()), res

    def powers():
        q = _coeffs("q", domain)
        G = GroebnerBasis(base() + q[4:9], max_degree=8)
        res = {"p1^4": G.contains(q[1] ** 4), "p2^3": G.contains(q[2] ** 3), "p3^2": G.contains(q[3] ** 2)}
        return all(res.values()), res

    def multiples():
        q = _coeffs("q", domain)
        G = GroebnerBasis(base() + q[1:9], max_degree=3)
        R = q[0].ring
        res = {f"a{i}*p0": G.contains(R.gen(f"a{i}") * q[0]) for i in range(4, 11)}
        return all(res.values()), res

    return {
        "A4,A8,A10 in I": in_I,
        "B12 in (I,B6)": b12,
        "p1^4,p2^3,p3^2 in J": powers,
        "a_i p0 in J' (i=4..10)": multiples,
    }


CLAIM_NAMES = {
    "I": "A4,A8,A10 in I",
    "B12": "B12 in (I,B6)",
    "J": "p1^4,p2^3,p3^2 in J",
    "Jprime": "a_i p0 in J' (i=4..10)",
}
