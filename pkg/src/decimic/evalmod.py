"""Batched evaluation of transvectant recipes at many points mod p.

A form of order ``n`` evaluated at ``N`` points is an ``(n + 1, N)`` int64
array of its coefficients (x^n first) reduced mod p.  Every recipe node costs
a handful of vectorized numpy operations, independent of how large the
symbolic expansion would be.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import expr as E
from .binforms import transvectant_weights


@lru_cache(maxsize=None)
def _weights_mod(n: int, m: int, k: int, p: int):
    entries, denom = transvectant_weights(n, m, k)
    if denom % p == 0:
        raise ValueError(f"transvectant ({n},{m})_{k} not defined mod {p}")
    scale = pow(denom % p, -1, p)
    by_a: dict[int, tuple[list[int], list[int]]] = {}
    for a, b, t in entries:
        tm = t * scale % p
        if tm:
            bs, ts = by_a.setdefault(a, ([], []))
            bs.append(b)
            ts.append(tm)
    return tuple((a, np.array(bs), np.array(ts, dtype=np.int64)[:, None]) for a, (bs, ts) in sorted(by_a.items()))


def transvect(A: np.ndarray, B: np.ndarray, k: int, p: int) -> np.ndarray:
    n, m = A.shape[0] - 1, B.shape[0] - 1
    out = np.zeros((n + m - 2 * k + 1, A.shape[1]), dtype=np.int64)
    for a, bs, ts in _weights_mod(n, m, k, p):
        prod = A[a] * B[bs] % p
        out[a + bs - k] += prod * ts % p
    out %= p
    return out


class BatchBackend:
    """Recipe backend over a fixed batch of ground-form coefficient vectors."""

    def __init__(self, ground: np.ndarray, p: int):
        self.F = np.asarray(ground, dtype=np.int64) % p
        self.p = p

    @property
    def npoints(self) -> int:
        return self.F.shape[1]

    def ground(self, n: int) -> np.ndarray:
        if n != self.F.shape[0] - 1:
            raise ValueError(f"recipe expects order {n}, batch has order {self.F.shape[0] - 1}")
        return self.F

    def fixed(self, coeffs) -> np.ndarray:
        col = np.asarray(coeffs, dtype=np.int64)[:, None] % self.p
        return np.repeat(col, self.npoints, axis=1)

    def transvectant(self, A, B, k: int) -> np.ndarray:
        return transvect(A, B, k, self.p)

    def mul(self, A, B) -> np.ndarray:
        return transvect(A, B, 0, self.p)

    def add(self, A, B) -> np.ndarray:
        return (A + B) % self.p

    def evaluate(self, recipe: E.Expr, memo: dict | None = None) -> np.ndarray:
        return E.evaluate(recipe, self, memo)

    def invariant(self, recipe: E.Expr, memo: dict | None = None) -> np.ndarray:
        out = self.evaluate(recipe, memo)
        if out.shape[0] != 1:
            raise ValueError(f"recipe has order {out.shape[0] - 1}, not an invariant")
        return out[0]


def plain_coefficients(a_values: np.ndarray, p: int) -> np.ndarray:
    """Rows ``C(n,i) * a_i`` from rows of ``a_i`` values."""
    n = a_values.shape[0] - 1
    binom = np.array([comb(n, i) % p for i in range(n + 1)], dtype=np.int64)[:, None]
    return binom * (np.asarray(a_values, dtype=np.int64) % p) % p


def eval_invariants_mod_p(recipes: Sequence[E.Expr], points: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Values of invariant recipes at decimics given by ``a0..a10`` rows; result[point][recipe]."""
    a = np.array([[int(c) % p for c in pt] for pt in points], dtype=np.int64).T
    backend = BatchBackend(plain_coefficients(a, p), p)
    memo: dict = {}
    cols = [backend.invariant(rec, memo) for rec in recipes]
    return [[int(col[j]) for col in cols] for j in range(a.shape[1])]
