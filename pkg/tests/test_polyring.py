from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from decimic.polyring import (
    DomainError, Ring, diff, eval_mod_p, evaluate, from_json, from_text, homogeneous_component,
    is_prime, substitute, to_json, to_text,
)

NAMES = ("x", "y", "z")
R = Ring(NAMES)
Q = Ring(NAMES, "QQ")

term = st.tuples(st.tuples(*[st.integers(0, 4)] * 3), st.integers(-20, 20))
poly = st.lists(term, max_size=6).map(R.from_terms)


def to_sympy(p):
    xs = sympy.symbols(NAMES)
    return sympy.expand(sum(sympy.Rational(c) * sympy.Mul(*[v ** e for v, e in zip(xs, exps)])
                            for exps, c in p.iter_terms()))


@settings(max_examples=60, deadline=None)
@given(poly, poly)
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@settings(max_examples=40, deadline=None)
@given(poly, st.integers(0, 3))
def test_power_and_derivative(p, e):
    x = sympy.Symbol("x")
    assert to_sympy(p ** e) == sympy.expand(to_sympy(p) ** e)
    assert to_sympy(diff(p, "x", 2)) == sympy.expand(sympy.diff(to_sympy(p), x, 2))


@settings(max_examples=40, deadline=None)
@given(poly)
def test_text_and_json_round_trip(p):
    assert from_text(R, to_text(p)) == p
    assert from_json(to_json(p)) == p


def test_pack_and_degree_helpers():
    m = R.pack((3, 0, 2))
    assert R.unpack(m) == (3, 0, 2)
    assert R.mdeg(m) == 5
    assert R.mdivides(R.pack((1, 0, 2)), m)
    assert not R.mdivides(R.pack((0, 1, 0)), m)
    assert R.unpack(R.mlcm(R.pack((1, 4, 0)), m)) == (3, 4, 2)


def test_zz_rejects_fractions_qq_keeps_them():
    with pytest.raises(ArithmeticError):
        R.constant(Fraction(1, 2))
    half = Q.constant(Fraction(1, 2))
    assert (half * 2) == Q.one


def test_prime_field_reduces():
    F = Ring(NAMES, 7)
    x = F.gen("x")
    assert (x * 8) == x
    assert not (x * 7)


def test_substitute_and_evaluate():
    x, y, z = R.gens()
    p = x * x * y + z * 3
    s = substitute(p, {"x": y + z})
    assert s == (y + z) * (y + z) * y + z * 3
    assert evaluate(p, {"x": 2, "y": Fraction(1, 3), "z": 1}) == Fraction(4, 3) + 3
    with pytest.raises(KeyError):
        evaluate(p, {"x": 1})


def test_substitute_into_smaller_ring():
    x, y, z = R.gens()
    S = Ring(("y",))
    out = substitute(x * y + z, {"x": 2, "z": 0}, target=S)
    assert out == S.gen("y") * 2
    with pytest.raises(DomainError):
        substitute(x * y + z, {"x": 2}, target=S)


def test_eval_mod_p():
    x, y, z = Q.gens()
    p = x * Fraction(1, 2) + y * y
    assert eval_mod_p(p, {"x": 1, "y": 3}, 11) == (6 + 9) % 11
    with pytest.raises(ValueError):
        eval_mod_p(p, {"x": 1, "y": 3}, 12)
    with pytest.raises(KeyError):
        eval_mod_p(p, {"x": 1}, 11)


def test_homogeneous_component():
    x, y, z = R.gens()
    p = x * x + x * y * z + z
    assert homogeneous_component(p, ("x", "y"), 2) == x * x + x * y * z


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(1000003)
