"""Stretch runs; opt in with DECIMIC_LONG=1."""

import os

import pytest

from decimic import basisearch as B
from decimic import reference as REF
from decimic.cli import ideal_dimension

pytestmark = [pytest.mark.long,
              pytest.mark.skipif(os.environ.get("DECIMIC_LONG") != "1", reason="set DECIMIC_LONG=1")]


def test_counts_through_degree_21():
    s = B.BasisSearch(p=109, seed=0, max_degree=21)
    s.run(21)
    assert s.d_table() == REF.BASIC_COUNTS


@pytest.mark.parametrize("m", [27, 28])
def test_larger_ideal_dimensions(m):
    sel, want = REF.IDEAL_DIMENSIONS[m]
    assert ideal_dimension(sel, m, 197, 0)["dimension"] == want
