from fractions import Fraction

import numpy as np
import pytest

from decimic.binforms import (
    BinaryForm, apply_sl2, coefficient_ring, form_from_json, form_to_json, generic_form,
    numeric_form, to_polynomial, transvectant, transvectant_by_derivatives,
)
from decimic.polyring import Ring


def rand_form(rng, n, bound=6):
    return numeric_form([int(c) for c in rng.integers(-bound, bound + 1, size=n + 1)])


def rand_sl2(rng):
    # products of elementary matrices have determinant 1
    M = np.eye(2, dtype=np.int64)
    for _ in range(3):
        t = int(rng.integers(-2, 3))
        E = np.array([[1, t], [0, 1]]) if rng.integers(2) else np.array([[1, 0], [t, 1]])
        M = M @ E
    return [[int(M[0, 0]), int(M[0, 1])], [int(M[1, 0]), int(M[1, 1])]]


def test_transvectant_agrees_with_derivative_formula(rng):
    R = Ring(("u",), "QQ")
    for _ in range(25):
        n, m = (int(t) for t in rng.integers(1, 7, size=2))
        k = int(rng.integers(0, min(n, m) + 1))
        f, g = rand_form(rng, n), rand_form(rng, m)
        lifted = [BinaryForm(h.order, tuple(R.constant(c) for c in h.coeffs), 1) for h in (f, g)]
        pf, pg = (to_polynomial(h) for h in lifted)
        expect = transvectant_by_derivatives(pf, pg, n, m, k)
        got = to_polynomial(transvectant(*lifted, k))
        assert got == expect


def test_symmetry_bilinearity_equivariance(rng):
    # 200 random exact cases
    for _ in range(200):
        n, m = (int(t) for t in rng.integers(1, 7, size=2))
        k = int(rng.integers(0, min(n, m) + 1))
        f, f2, g = rand_form(rng, n), rand_form(rng, n), rand_form(rng, m)
        a, b = (int(t) for t in rng.integers(-4, 5, size=2))
        fg = transvectant(f, g, k)
        gf = transvectant(g, f, k)
        assert fg.coeffs == tuple((-1) ** k * c for c in gf.coeffs)
        lhs = transvectant(f * a + f2 * b, g, k)
        rhs = fg * a + transvectant(f2, g, k) * b
        assert lhs.coeffs == rhs.coeffs
        M = rand_sl2(rng)
        assert transvectant(apply_sl2(f, M), apply_sl2(g, M), k).coeffs == apply_sl2(fg, M).coeffs


def test_transvectant_index_range():
    f = numeric_form([1, 0, 1])
    with pytest.raises(ValueError):
        transvectant(f, f, 3)


def test_apply_sl2_convention_and_determinant():
    f = numeric_form([1, 0, 0])  # x^2
    g = numeric_form([0, 0, 1])  # y^2
    M = [[1, 1], [0, 1]]
    assert apply_sl2(f, M).coeffs == (1, 0, 0)
    assert apply_sl2(g, M).coeffs == (1, 2, 1)
    with pytest.raises(ValueError):
        apply_sl2(f, [[2, 0], [0, 1]])


def test_invariant_of_quadratic_is_discriminant():
    # (f, f)_2 for a x^2 + b x y + c y^2 is (4ac - b^2)/2 up to the normalization
    f = numeric_form([1, 3, 2])
    d = transvectant(f, f, 2).coeffs[0]
    assert d == Fraction(2 * 4 - 9, 2)


def test_symbolic_and_numeric_paths_agree(rng):
    F = generic_form(6, coefficient_ring(6, "QQ"))
    sym = transvectant(transvectant(F, F, 4), F, 4)
    vals = [int(t) for t in rng.integers(-5, 6, size=7)]
    num = transvectant(transvectant(numeric_form(vals, binomial=True),
                                    numeric_form(vals, binomial=True), 4),
                       numeric_form(vals, binomial=True), 4)
    point = {f"a{i}": v for i, v in enumerate(vals)}
    from decimic.polyring import evaluate

    assert tuple(evaluate(c, point) for c in sym.coeffs) == num.coeffs


def test_form_json_round_trip():
    F = generic_form(4)
    k = transvectant(F, F, 2)
    back = form_from_json(form_to_json(k))
    assert back.order == k.order and back.degree == k.degree
    assert all(a == b for a, b in zip(back.coeffs, k.coeffs))
