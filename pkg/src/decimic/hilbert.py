"""Cayley-Sylvester dimension counts, Poincare series and hsop numerators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence


@lru_cache(maxsize=None)
def _gaussian_binomial(parts: int, size: int) -> tuple[int, ...]:
    """Coefficients of [parts+size choose parts]_q: partitions into at most ``parts``
    parts, each at most ``size``."""
    # prod_{i=1..size} (1 - q^(parts+i)) / (1 - q^i)
    poly = [1]
    for i in range(1, size + 1):
        shift = parts + i
        grown = poly + [0] * shift
        for j in range(len(poly) - 1, -1, -1):
            grown[j + shift] -= poly[j]
        # divide by (1 - q^i): b_j = a_j + b_{j-i}
        for j in range(i, len(grown)):
            grown[j] += grown[j - i]
        while len(grown) > 1 and grown[-1] == 0:
            grown.pop()
        poly = grown
    return tuple(poly)


def partition_count(k: int, max_parts: int, max_part: int) -> int:
    """Number of partitions of ``k`` into at most ``max_parts`` parts, each at most ``max_part``."""
    if k < 0:
        return 0
    if max_parts < 0 or max_part < 0:
        return 0
    coeffs = _gaussian_binomial(max_parts, max_part)
    return coeffs[k] if k < len(coeffs) else 0


def dim_invariants(n: int, m: int) -> int:
    """dim of the degree-``m`` invariants of binary forms of order ``n``."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if (n * m) % 2:
        return 0
    w = n * m // 2
    return partition_count(w, m, n) - partition_count(w - 1, m, n)


@dataclass(frozen=True)
class DimensionTable:
    n: int
    coeffs: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        return self.coeffs[m]

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class NumeratorTable:
    degrees: tuple[int, ...]
    coeffs: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if j < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def nonzero(self) -> dict[int, int]:
        return {j: c for j, c in enumerate(self.coeffs) if c}


def poincare_table(n: int, max_degree: int) -> DimensionTable:
    return DimensionTable(n, tuple(dim_invariants(n, m) for m in range(max_degree + 1)))


def numerator(table: DimensionTable, degrees: Sequence[int]) -> NumeratorTable:
    """Truncated ``P(t) * prod(1 - t^d)``, exact through ``len(table) - 1``.

    Raises ``ValueError`` when the table stops before the expected top degree
    ``sum(degrees) - (n + 1)`` of the numerator, since trailing zeros could not
    be certified.
    """
    degrees = tuple(degrees)
    top = sum(degrees) - (table.n + 1)
    if len(table) - 1 < top:
        raise ValueError(f"table through t^{len(table) - 1} cannot certify a numerator of degree {top}")
    poly = list(table.coeffs)
    for d in degrees:
        for j in range(len(poly) - 1, d - 1, -1):
            poly[j] -= poly[j - d]
    return NumeratorTable(degrees, tuple(poly))


def degree_bound(num: NumeratorTable) -> int:
    """Index of the last nonzero coefficient."""
    last = 0
    for j, c in enumerate(num.coeffs):
        if c:
            last = j
    return last


def first_zero_multiple(num: NumeratorTable, step: int) -> int | None:
    """Smallest positive multiple of ``step`` where the numerator coefficient vanishes."""
    for j in range(step, len(num.coeffs), step):
        if num.coeffs[j] == 0:
            return j
    return None


def series_from_numerator(num: NumeratorTable, max_degree: int) -> list[int]:
    """Expand ``a(t) / prod(1 - t^d)`` through ``max_degree``."""
    out = [num[j] for j in range(max_degree + 1)]
    for d in num.degrees:
        for j in range(d, max_degree + 1):
            out[j] += out[j - d]
    return out


DECIMIC_HSOP_DEGREES = (2, 4, 6, 6, 8, 9, 10, 14)
