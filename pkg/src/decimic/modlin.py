"""Prime-field vectors and an incremental reduced-row-echelon span."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from .polyring import Polynomial, is_prime

MIN_MODULUS = 50
# int64 dot products of length r need r * (p-1)^2 < 2^63
_INT64_LIMIT = 2 ** 63 - 1


@dataclass(frozen=True)
class PrimeField:
    p: int = 109

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p <= MIN_MODULUS:
            raise ValueError(f"modulus {self.p} too small; need p > {MIN_MODULUS}")
        if self.p >= 2 ** 31:
            raise ValueError("modulus must fit in 31 bits")

    def vector(self, values: Iterable[int]) -> np.ndarray:
        return np.asarray(list(values), dtype=np.int64) % self.p


class IncrementalSpan:
    """Rows kept in reduced row echelon form over GF(p).

    ``insert`` answers whether a vector enlarges the span.  Over GF(p) an
    "independent" answer certifies independence of any integral lifts; a
    "dependent" answer certifies nothing about the lifts.
    """

    def __init__(self, dim: int, p: int = 109):
        self.field = PrimeField(p)
        self.p = p
        self.dim = dim
        self._rows = np.zeros((0, dim), dtype=np.int64)
        self._pivots: list[int] = []
        self._cap = 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows[: self.rank]

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    def reduce(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        """Residue of ``v`` after eliminating the pivot columns."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise ValueError(f"vector length {v.shape} does not match ambient dimension {self.dim}")
        r = self.rank
        if r == 0:
            return v
        coeffs = v[self._pivots]
        rows = self._rows[:r]
        p = self.p
        chunk = max(1, _INT64_LIMIT // ((p - 1) ** 2 + 1))
        acc = np.zeros(self.dim, dtype=np.int64)
        for start in range(0, r, chunk):
            acc = (acc + coeffs[start:start + chunk] @ rows[start:start + chunk]) % p
        return (v - acc) % p

    def insert(self, v: Sequence[int] | np.ndarray) -> bool:
        """Add ``v``; True iff it was outside the current span."""
        w = self.reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        p = self.p
        c = int(nz[0])
        w = w * pow(int(w[c]), -1, p) % p
        r = self.rank
        if r:
            rows = self._rows[:r]
            col = rows[:, c].copy()
            if col.any():
                rows -= np.outer(col, w) % p
                rows %= p
        self._append(w)
        self._pivots.append(c)
        return True

    def _append(self, w: np.ndarray) -> None:
        r = self.rank
        if r >= self._rows.shape[0]:
            grow = max(8, r)
            self._rows = np.vstack([self._rows, np.zeros((grow, self.dim), dtype=np.int64)])
        self._rows[r] = w

    def grow(self, dim: int) -> None:
        """Enlarge the ambient space with zero columns (for lazily interned coordinates)."""
        if dim < self.dim:
            raise ValueError("cannot shrink the ambient space")
        if dim > self.dim:
            pad = np.zeros((self._rows.shape[0], dim - self.dim), dtype=np.int64)
            self._rows = np.hstack([self._rows, pad])
            self.dim = dim

    def contains(self, v: Sequence[int] | np.ndarray) -> bool:
        return not self.reduce(v).any()

    def state(self) -> tuple[tuple[int, ...], bytes]:
        """Canonical snapshot, for determinism checks."""
        order = np.argsort(self._pivots)
        return tuple(sorted(self._pivots)), self.rows[order].tobytes()


def rank_mod_p(vectors: Iterable[np.ndarray], dim: int, p: int) -> int:
    span = IncrementalSpan(dim, p)
    for v in vectors:
        span.insert(v)
    return span.rank


# -- monomial coordinates -------------------------------------------------------


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total ``degree``, graded lex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def vectorize(poly: Polynomial, names: Sequence[str], degree: int, p: int) -> np.ndarray:
    """Coefficient vector of ``poly`` (homogeneous of ``degree`` in ``names``) mod p."""
    ring = poly.ring
    idx = [ring.index(v) for v in names]
    basis = monomials_of_degree(len(names), degree)
    position = {e: j for j, e in enumerate(basis)}
    out = np.zeros(len(basis), dtype=np.int64)
    other = [i for i in range(ring.nvars) if i not in idx]
    for m, c in poly.terms.items():
        exps = ring.unpack(m)
        if any(exps[i] for i in other):
            raise ValueError("polynomial uses variables outside the slice")
        key = tuple(exps[i] for i in idx)
        if sum(key) != degree:
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        out[position[key]] = _modp(c, p)
    return out % p


def _modp(c, p: int) -> int:
    from fractions import Fraction

    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


class MonomialIndex:
    """Lazily interned monomial coordinates for inhomogeneous polynomials.

    Columns are assigned in first-seen order; vectors from before a growth
    step are zero-padded when compared.
    """

    def __init__(self, p: int):
        self.p = p
        self._pos: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._pos)

    def intern(self, poly: Polynomial) -> dict[int, int]:
        out = {}
        pos = self._pos
        for m, c in sorted(poly.terms.items()):
            j = pos.get(m)
            if j is None:
                j = pos[m] = len(pos)
            out[j] = _modp(c, self.p)
        return out

    def dense(self, sparse: dict[int, int], dim: int | None = None) -> np.ndarray:
        v = np.zeros(dim or len(self._pos), dtype=np.int64)
        for j, c in sparse.items():
            v[j] = c
        return v
