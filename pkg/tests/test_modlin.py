import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from decimic.modlin import IncrementalSpan, MonomialIndex, PrimeField, monomials_of_degree, rank_mod_p, vectorize
from decimic.polyring import Ring


def oracle_rank(rows, p):
    if not rows:
        return 0
    return DomainMatrix([[GF(p)(int(v)) for v in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


def test_rank_matches_sympy(rng):
    for p in (109, 197):
        for _ in range(30):
            r, c = (int(t) for t in rng.integers(1, 12, size=2))
            base = rng.integers(0, p, size=(max(1, r // 2), c))
            # mix in dependent rows
            mix = rng.integers(0, p, size=(r, base.shape[0]))
            rows = (mix @ base) % p
            assert rank_mod_p(list(rows), c, p) == oracle_rank(rows.tolist(), p)


def test_insert_reports_independence():
    s = IncrementalSpan(3, 109)
    assert s.insert([1, 2, 3])
    assert not s.insert([2, 4, 6])
    assert s.insert([0, 1, 0])
    assert s.contains([1, 0, 3])
    assert s.rank == 2
    with pytest.raises(ValueError):
        s.insert([1, 2])


def test_rows_stay_reduced(rng):
    p = 197
    s = IncrementalSpan(8, p)
    for _ in range(12):
        s.insert(rng.integers(0, p, size=8))
    rows = s.rows
    for i, c in enumerate(s.pivots):
        col = rows[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


def test_state_is_order_independent(rng):
    vecs = [rng.integers(0, 109, size=6) for _ in range(4)]
    a, b = IncrementalSpan(6, 109), IncrementalSpan(6, 109)
    for v in vecs:
        a.insert(v)
    for v in reversed(vecs):
        b.insert(v)
    assert a.state() == b.state()


def test_grow_pads_columns():
    s = IncrementalSpan(2, 109)
    s.insert([1, 1])
    s.grow(4)
    assert s.insert([1, 1, 0, 1])
    assert s.rank == 2


def test_field_checks():
    with pytest.raises(ValueError):
        PrimeField(100)
    with pytest.raises(ValueError):
        PrimeField(47)


def test_vectorize_and_monomial_index():
    R = Ring(("a", "b", "c"))
    a, b, c = R.gens()
    assert len(monomials_of_degree(3, 2)) == 6
    v = vectorize(a * a * 3 + b * c, ("a", "b", "c"), 2, 109)
    # a^2, ab, ac, b^2, bc, c^2
    assert v.tolist() == [3, 0, 0, 0, 1, 0]
    with pytest.raises(ValueError):
        vectorize(a + b * c, ("a", "b", "c"), 2, 109)
    idx = MonomialIndex(109)
    s1 = idx.intern(a + b)
    s2 = idx.intern(b * 2 + c)
    assert len(idx) == 3
    assert idx.dense(s2).tolist().count(0) == 1
    assert set(s1) <= set(range(3))
