from fractions import Fraction

import numpy as np
import pytest
import sympy

from decimic import nullcone as N
from decimic.binforms import apply_sl2


def sympy_max_multiplicity(f):
    # oracle: factor the dehomogenized polynomial, add the root at infinity by hand
    t = sympy.Symbol("t")
    n = f.order
    inf = 0
    while inf <= n and f.coeffs[inf] == 0:
        inf += 1
    poly = sympy.Poly(sum(sympy.Rational(str(f.coeffs[i])) * t ** (n - i) for i in range(n + 1)), t)
    # distinct irreducible factors share no roots, so the largest exponent is the finite answer
    finite = max((e for _, e in sympy.factor_list(poly)[1]), default=0)
    return max(inf, finite)


def test_multiplicity_examples():
    assert N.max_multiplicity(N.NumericBinaryForm([1] + [0] * 6 + [0] * 4)).multiplicity == 10
    x6y4 = N.NumericBinaryForm([0] * 6 + [1] + [0] * 4)
    assert N.max_multiplicity(x6y4).multiplicity == 6
    # (x + y)^7 x^3
    coeffs = [sympy.binomial(7, i) for i in range(8)] + [0, 0, 0]
    rep = N.max_multiplicity(N.NumericBinaryForm(coeffs))
    assert rep.multiplicity == 7
    assert rep.root == (Fraction(-1), Fraction(1))
    assert rep.linear_factor() == (1, 1)
    assert N.max_multiplicity(N.NumericBinaryForm([1] + [0] * 9 + [1])).multiplicity == 1


def test_multiplicity_matches_factorization(rng):
    for _ in range(60):
        n = int(rng.integers(2, 11))
        f = N.random_form(n, rng, bound=2) if rng.random() < 0.5 else N.random_nullform(n, rng, bound=2)
        if f.is_zero():
            continue
        assert N.max_multiplicity(f).multiplicity == sympy_max_multiplicity(f)


def test_nullform_threshold():
    x5y5 = N.NumericBinaryForm([0] * 5 + [1] + [0] * 5)
    assert not N.is_nullform(x5y5)
    x6y4 = N.NumericBinaryForm([0] * 4 + [1] + [0] * 6)
    assert N.is_nullform(x6y4)
    assert N.is_nullform(N.NumericBinaryForm([0] * 11))
    with pytest.raises(ValueError):
        N.max_multiplicity(N.NumericBinaryForm([0, 0, 0]))


def test_pair_nullform():
    # x^3 y and x^5 y^2 share the root (0 : 1) with multiplicities 3 > 2 and 5 > 3.5
    g = N.NumericBinaryForm([0, 1, 0, 0, 0])  # x^3 y
    h = N.NumericBinaryForm([0, 0, 1, 0, 0, 0, 0, 0])  # x^5 y^2
    assert N.is_pair_nullform(g, h)
    # x y^3 has its heavy root at (1 : 0) instead
    g2 = N.NumericBinaryForm([0, 0, 0, 1, 0])
    assert not N.is_pair_nullform(g2, h)
    # a non-monomial shared root (x - y)
    lin = [1, -1]
    g3 = N.NumericBinaryForm(N._poly_mul(N._poly_mul(N._poly_mul(lin, lin), lin), [1, 2]))
    h3 = N.NumericBinaryForm(N._poly_mul(N._poly_mul(lin, lin), [1, 0]))
    assert N.is_pair_nullform(g3, h3)
    with pytest.raises(ValueError):
        N.is_pair_nullform(N.NumericBinaryForm([0, 0]), g)


def test_random_nullform_properties():
    for n in (2, 5, 10):
        f = N.random_nullform(n, np.random.default_rng(n))
        assert N.max_multiplicity(f).multiplicity == n // 2 + 1
        again = N.random_nullform(n, np.random.default_rng(n))
        assert f.coeffs == again.coeffs


def test_multiplicity_is_sl2_invariant(rng):
    for _ in range(20):
        f = N.random_nullform(10, rng, bound=3)
        while True:
            a, b, c = (int(t) for t in rng.integers(-3, 4, size=3))
            if a != 0:
                break
        # det 1 with rational entries
        M = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(1 + b * c, a)))
        g = apply_sl2(f, M)
        assert N.max_multiplicity(g).multiplicity == N.max_multiplicity(f).multiplicity


def test_hsop_against_nullcone_small():
    for n in (2, 4, 6, 8, 10):
        rep = N.verify_hsop_defines_nullcone(n, 15, np.random.default_rng(n))
        assert rep.ok, rep.as_dict()
        assert rep.nullforms == 15 and rep.others > 0
    with pytest.raises(ValueError):
        N.verify_hsop_defines_nullcone(7, 1, np.random.default_rng(0))


def test_proportionality():
    from decimic.polyring import Ring

    R = Ring(("a", "b"), "QQ")
    a, b = R.gens()
    assert N.proportionality(a * 3 + b * 6, a + b * 2) == 3
    assert N.proportionality(a, b) is None
    assert N.proportionality(R.zero, a) is None


def test_multiplicity_criterion_examples():
    x8 = N.NumericBinaryForm([1] + [0] * 8)
    assert N.jerzy_predicate(x8, 1) == {"hypothesis": True, "conclusion": True}
    x4y4 = N.NumericBinaryForm([0] * 4 + [1] + [0] * 4)
    assert N.jerzy_predicate(x4y4, 2)["hypothesis"] is False
    with pytest.raises(ValueError):
        N.jerzy_predicate(x8, 4)  # 8 < 4*4 - 4
    with pytest.raises(ValueError):
        N.jerzy_predicate(x8, 0)


def test_multiplicity_criterion_on_planted_roots(rng):
    # l^(d-k+1) g always satisfies the hypothesis, and the conclusion follows
    for _ in range(10):
        k = int(rng.integers(1, 4))
        d = int(rng.integers(max(2, 4 * k - 4), 4 * k + 3))
        u, v = 1, int(rng.integers(-3, 4))
        g = [int(t) for t in rng.integers(-3, 4, size=k)]
        if not any(g):
            g[0] = 1
        coeffs = g
        for _ in range(d - k + 1):
            coeffs = N._poly_mul(coeffs, [u, v])
        res = N.jerzy_predicate(N.NumericBinaryForm(coeffs), k)
        assert res == {"hypothesis": True, "conclusion": True}


@pytest.mark.parametrize("prime", [32003, 1000003])
def test_membership_verdicts_hold_mod_large_primes(prime):
    for name, claim in N.membership_claims(prime).items():
        ok, detail = claim()
        assert ok, (name, detail)


def test_x6y4_kills_the_nullcone_set():
    from decimic.catalog import NULLCONE_SET, INVARIANTS, evaluate_on

    f = N.NumericBinaryForm([0] * 4 + [1] + [0] * 6)
    memo = {}
    for sym in list(NULLCONE_SET) + ["j14+A14"]:
        assert evaluate_on(INVARIANTS[sym], f, memo).invariant_value() == 0
