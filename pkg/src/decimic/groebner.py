"""Buchberger's algorithm over QQ or a prime field.

Internally a polynomial is a dict ``packed monomial -> coefficient`` sharing
the packing of :class:`decimic.polyring.Ring`.  Over QQ the coefficients are
``gmpy2.mpq``; over GF(p) plain ints.  Basis elements are kept monic.

For homogeneous generators the computation can be truncated at a degree
bound: after all pairs up to degree ``D`` are processed, every ideal member of
degree ``<= D`` reduces to zero.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import gmpy2

from .polyring import Polynomial, Ring, _BITS

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """The pair-processing step budget ran out before the basis was complete."""


def _order_key(ring: Ring, order: str) -> Callable[[int], object]:
    width = _BITS * ring.nvars
    mdeg = ring.mdeg
    if order == "grevlex":
        # with variable i at bit offset 16*i, a larger packed int means larger
        # exponents in the trailing variables, i.e. a smaller monomial
        return lambda m: (mdeg(m) << width) - m
    unpack = ring.unpack
    if order == "grlex":
        return lambda m: (mdeg(m), unpack(m))
    if order == "lex":
        return unpack
    raise ValueError(f"unknown monomial order {order!r}")


class _Arith:
    """Coefficient arithmetic for one domain."""

    def __init__(self, ring: Ring):
        self.p = ring.modulus
        if ring.domain == "ZZ":
            ring = ring.with_domain("QQ")
        self.ring = ring

    def conv_in(self, c):
        if self.p is not None:
            return int(c) % self.p
        if isinstance(c, Fraction):
            return gmpy2.mpq(c.numerator, c.denominator)
        return gmpy2.mpq(c)

    def conv_out(self, c):
        if self.p is not None:
            return int(c)
        return Fraction(int(c.numerator), int(c.denominator))

    def inv(self, c):
        if self.p is not None:
            return pow(c, -1, self.p)
        return 1 / c


@dataclass
class _Poly:
    terms: dict
    lm: int
    lkey: object
    deg: int


def _lead(terms: dict, key) -> int:
    return max(terms, key=key)


class GroebnerBasis:
    """A (possibly degree-truncated) Gröbner basis of the ideal generated by ``gens``."""

    def __init__(self, gens: Sequence[Polynomial], order: str = "grevlex",
                 max_degree: int | None = None, budget: int = 10 ** 7):
        if not gens:
            raise ValueError("need at least one generator")
        self.ring = gens[0].ring
        for g in gens:
            if g.ring != self.ring:
                raise ValueError("generators live in different rings")
        self.order = order
        self.max_degree = max_degree
        self.budget = budget
        self._key = _order_key(self.ring, order)
        if order == "grevlex":
            width, mdeg = _BITS * self.ring.nvars, self.ring.mdeg
            self._hkey = lambda m: m - (mdeg(m) << width)
        else:
            self._hkey = lambda m: _neg(self._key(m))
        self._ar = _Arith(self.ring)
        self.basis: list[_Poly] = []
        self.steps = 0
        self.homogeneous = all(_is_homogeneous(g) for g in gens if g)
        if max_degree is not None and not self.homogeneous:
            raise ValueError("degree truncation requires homogeneous generators")
        self._generators = [g for g in gens if g]
        self._compute()

    # -- reduction -------------------------------------------------------------

    def _monic(self, terms: dict) -> _Poly:
        key = self._key
        lm = _lead(terms, key)
        inv = self._ar.inv(terms[lm])
        p = self._ar.p
        if p is None:
            terms = {m: c * inv for m, c in terms.items()}
        else:
            terms = {m: c * inv % p for m, c in terms.items()}
        return _Poly(terms, lm, key(lm), self.ring.mdeg(lm))

    def _find_reducer(self, mono: int) -> _Poly | None:
        div = self.ring.mdivides
        for g in self.basis:
            if div(g.lm, mono):
                return g
        return None

    def _reduce_terms(self, terms: dict, full: bool = True) -> dict:
        """Normal form of ``terms`` (a fresh dict, consumed) modulo the current basis."""
        hkey = self._hkey
        p = self._ar.p
        remainder: dict = {}
        heap = [(hkey(m), m) for m in terms]
        heapq.heapify(heap)
        while heap:
            _, mono = heapq.heappop(heap)
            c = terms.pop(mono, None)
            if c is None or not c:
                continue
            g = self._find_reducer(mono)
            if g is None:
                remainder[mono] = c
                if not full:
                    # top-reduced: keep the rest untouched
                    for m2, c2 in terms.items():
                        if c2:
                            remainder[m2] = c2
                    return remainder
                continue
            shift = mono - g.lm
            get = terms.get
            for m2, c2 in g.terms.items():
                if m2 == g.lm:
                    continue
                t = m2 + shift
                old = get(t)
                if old is None:
                    nv = -c * c2 if p is None else (-c * c2) % p
                    if nv:
                        terms[t] = nv
                        heapq.heappush(heap, (hkey(t), t))
                else:
                    nv = old - c * c2 if p is None else (old - c * c2) % p
                    terms[t] = nv
        return remainder

    # -- Buchberger --------------------------------------------------------------

    def _compute(self) -> None:
        pairs: list = []  # heap of (degree, lcm key, counter, i, j)
        self._pairs = pairs
        self._counter = 0
        self._inactive: set[int] = set()
        self.truncated = False
        for g in sorted(self._generators, key=lambda g: g.total_degree):
            terms = {m: self._ar.conv_in(c) for m, c in g.terms.items()}
            red = self._reduce_terms(terms)
            if red:
                self._add(self._monic(red))
        while pairs:
            deg, _, _, i, j = heapq.heappop(pairs)
            if self.max_degree is not None and deg > self.max_degree:
                self.truncated = True
                break
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(f"gave up after {self.budget} pair reductions")
            gi, gj = self.basis[i], self.basis[j]
            if gi is None or gj is None:
                continue
            s = self._spoly(gi, gj)
            red = self._reduce_terms(s)
            if red:
                self._add(self._monic(red))
        self.basis = [g for g in self.basis if g is not None]
        log.debug("groebner: %d elements, %d pair reductions", len(self.basis), self.steps)

    def _spoly(self, f: _Poly, g: _Poly) -> dict:
        ring = self.ring
        lcm = ring.mlcm(f.lm, g.lm)
        sf, sg = lcm - f.lm, lcm - g.lm
        p = self._ar.p
        out = {m + sf: c for m, c in f.terms.items() if m != f.lm}
        for m, c in g.terms.items():
            if m == g.lm:
                continue
            t = m + sg
            v = out.get(t, 0) - c
            if p is not None:
                v %= p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def _add(self, h: _Poly) -> None:
        """Gebauer-Moeller update with the product and chain criteria."""
        ring = self.ring
        lcm, div = ring.mlcm, ring.mdivides
        basis = self.basis
        new_index = len(basis)
        cands = [(lcm(g.lm, h.lm), i, g.lm + h.lm == lcm(g.lm, h.lm))
                 for i, g in enumerate(basis) if g is not None and i not in self._inactive]
        # chain criterion: drop (g, h) when another new pair's lcm properly divides its lcm
        lcms = [c[0] for c in cands]
        cands = [c for c in cands if not any(l2 != c[0] and div(l2, c[0]) for l2 in lcms)]
        # one pair per lcm; a coprime representative kills the whole class
        by_lcm: dict[int, tuple[int, bool]] = {}
        for l, i, coprime in cands:
            prev = by_lcm.get(l)
            if prev is None or (coprime and not prev[1]):
                by_lcm[l] = (i, coprime or (prev is not None and prev[1]))
            elif coprime:
                by_lcm[l] = (prev[0], True)
        # old pairs made redundant by h
        kept = []
        for entry in self._pairs:
            i, j = entry[3], entry[4]
            gi, gj = basis[i], basis[j]
            lij = lcm(gi.lm, gj.lm)
            if div(h.lm, lij) and lcm(gi.lm, h.lm) != lij and lcm(gj.lm, h.lm) != lij:
                continue
            kept.append(entry)
        heapq.heapify(kept)
        self._pairs[:] = kept
        for i, g in enumerate(basis):
            if g is not None and div(h.lm, g.lm):
                self._inactive.add(i)
        basis.append(h)
        for l, (i, coprime) in by_lcm.items():
            if coprime:
                continue
            self._counter += 1
            heapq.heappush(self._pairs, (ring.mdeg(l), self._key_neg(l), self._counter, i, new_index))

    def _key_neg(self, m: int):
        return self._hkey(m)

    # -- public API --------------------------------------------------------------

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        terms = {m: self._ar.conv_in(c) for m, c in p.terms.items()}
        red = self._reduce_terms(terms)
        ring = self.ring if self.ring.domain != "ZZ" else self.ring.with_domain("QQ")
        return Polynomial(ring, {m: self._ar.conv_out(c) for m, c in red.items()})

    def contains(self, p: Polynomial) -> bool:
        if self.max_degree is not None and p.total_degree > self.max_degree:
            raise ValueError(f"degree {p.total_degree} exceeds truncation degree {self.max_degree}")
        if not p:
            return True
        terms = {m: self._ar.conv_in(c) for m, c in p.terms.items()}
        return not self._reduce_terms(terms, full=False)

    def polynomials(self) -> list[Polynomial]:
        ring = self.ring if self.ring.domain != "ZZ" else self.ring.with_domain("QQ")
        return [Polynomial(ring, {m: self._ar.conv_out(c) for m, c in g.terms.items()}) for g in self.basis]

    def reduced(self) -> list[Polynomial]:
        """Minimal, interreduced basis (not truncation-aware beyond ``max_degree``)."""
        div = self.ring.mdivides
        keep = [g for g in self.basis
                if not any(h is not g and div(h.lm, g.lm) and (h.lm != g.lm or id(h) < id(g))
                           for h in self.basis)]
        saved = self.basis
        out = []
        for g in keep:
            self.basis = [h for h in keep if h is not g]
            tail = dict(g.terms)
            lc = tail.pop(g.lm)
            red = self._reduce_terms(tail)
            red[g.lm] = lc
            out.append(red)
        self.basis = saved
        ring = self.ring if self.ring.domain != "ZZ" else self.ring.with_domain("QQ")
        polys = [Polynomial(ring, {m: self._ar.conv_out(c) for m, c in t.items()}) for t in out]
        key = self._key
        polys.sort(key=lambda P: key(max(P.terms, key=key)))
        return polys


class _neg:
    """Reverse-ordering wrapper so heapq pops the largest key first."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other: "_neg") -> bool:
        return other.v < self.v

    def __eq__(self, other) -> bool:
        return self.v == other.v


def _is_homogeneous(p: Polynomial) -> bool:
    md = p.ring.mdeg
    degs = {md(m) for m in p.terms}
    return len(degs) <= 1


def buchberger(gens: Sequence[Polynomial], order: str = "grevlex", max_degree: int | None = None,
               budget: int = 10 ** 7) -> GroebnerBasis:
    return GroebnerBasis(gens, order=order, max_degree=max_degree, budget=budget)


def reduces_to_zero(p: Polynomial, ideal: GroebnerBasis | Sequence[Polynomial]) -> bool:
    """Exact ideal membership of ``p``."""
    if not isinstance(ideal, GroebnerBasis):
        gens = list(ideal)
        hom = all(_is_homogeneous(g) for g in gens if g) and _is_homogeneous(p)
        ideal = GroebnerBasis(gens, max_degree=p.total_degree if hom and p else None)
    return ideal.contains(p)
