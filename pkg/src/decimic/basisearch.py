"""Degree-by-degree search for basic invariants of the binary decimic.

Every invariant is pushed through the ring map

    a4 = a7 = a9 = 0,  a10 = 1,  a0 = 126 a5^2 - 45 a2 a8,  then mod p,

which kills ``j2`` and sends ``I_m`` onto ``I_m / j2 I_{m-2}``, a space of
dimension ``dim I_m - dim I_{m-2}`` in the six remaining variables
``a1, a2, a3, a5, a6, a8``.  Images are compared in one of two coordinate
systems:

``"points"`` (default)
    values at a fixed seeded batch of points of GF(p)^6.  Linear
    independence of value vectors implies independence of the images.
``"monomial"``
    coefficient vectors over lazily interned monomials of the reduced
    polynomial.  Exact but only practical in low degree.

In degree ``m`` the products of already known basic invariants are inserted
first; random transvectant trees are then inserted until the span reaches
``dim I_m - dim I_{m-2}``.  Each random tree that enlarges the span is a new
basic invariant, so their count is ``d_m``.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import expr as E
from .binforms import BinaryForm
from .catalog import INVARIANTS, FormBackend, canonical
from .evalmod import BatchBackend, plain_coefficients
from .hilbert import dim_invariants
from .modlin import IncrementalSpan, MonomialIndex, PrimeField
from .polyring import Polynomial, Ring, substitute

log = logging.getLogger(__name__)

REDUCED_VARS = ("a1", "a2", "a3", "a5", "a6", "a8")
_STEP1_VARS = ("a0",) + REDUCED_VARS

DEFAULT_MAX_ORDER = 16
SLACK = 24
_BLOCK = 64


# -- the reduction chain ---------------------------------------------------------


def reduce_polynomial(p: Polynomial, modulus: int = 109, stage: int = 3) -> Polynomial:
    """Apply the reduction chain to a polynomial in a0..a10.

    ``stage=1`` stops after ``a4 = a7 = a9 = 0, a10 = 1``; ``stage=2`` after the
    a0 substitution (exact); ``stage=3`` also reduces mod ``modulus``.
    """
    src = p.ring
    R1 = Ring(_STEP1_VARS, src.domain)
    bind1 = {"a4": 0, "a7": 0, "a9": 0, "a10": 1}
    step1 = substitute(p, bind1, target=R1)
    if stage == 1:
        return step1
    R2 = Ring(REDUCED_VARS, src.domain)
    a2, a5, a8 = R2.gen("a2"), R2.gen("a5"), R2.gen("a8")
    step2 = substitute(step1, {"a0": a5 * a5 * 126 - a2 * a8 * 45}, target=R2)
    if stage == 2:
        return step2
    return step2.mod_p(modulus)


def reduced_ground_form(modulus: int) -> BinaryForm:
    """The decimic with the reduction chain applied to its coefficients, over GF(p)."""
    R = Ring(REDUCED_VARS, modulus)
    g = {v: R.gen(v) for v in REDUCED_VARS}
    a = {
        0: g["a5"] * g["a5"] * 126 - g["a2"] * g["a8"] * 45,
        4: R.zero, 7: R.zero, 9: R.zero, 10: R.one,
    }
    coeffs = []
    for i in range(11):
        ai = a[i] if i in a else g[f"a{i}"]
        coeffs.append(ai * comb(10, i))
    return BinaryForm(10, tuple(coeffs), 1)


def target_dim(m: int) -> int:
    """dim I_m - dim I_{m-2} for the decimic."""
    if m < 2:
        raise ValueError("target dimension needs m >= 2")
    return dim_invariants(10, m) - dim_invariants(10, m - 2)


def default_npoints(max_degree: int) -> int:
    return max(target_dim(m) for m in range(2, max(max_degree, 2) + 1)) + SLACK


# -- coordinates -------------------------------------------------------------------


class PointCoordinates:
    """Images represented by their values at a batch of points of the reduced slice."""

    mode = "points"

    def __init__(self, p: int, npoints: int, seed: int = 0):
        self.p = p
        self.npoints = npoints
        self.seed = seed
        # points come in seeded blocks so a larger batch extends a smaller one
        blocks = [np.random.default_rng(np.random.SeedSequence([seed, p, b, 0x5EED]))
                  .integers(0, p, size=(6, _BLOCK), dtype=np.int64)
                  for b in range(-(-npoints // _BLOCK))]
        pts = np.hstack(blocks)[:, :npoints]
        self.points = pts
        a = np.zeros((11, npoints), dtype=np.int64)
        for row, name in zip(pts, REDUCED_VARS):
            a[int(name[1:])] = row
        a[0] = (126 * pts[3] * pts[3] - 45 * pts[1] * pts[5]) % p
        a[10] = 1
        self.backend = BatchBackend(plain_coefficients(a, p), p)
        self._memo: dict = {}

    def a_values(self) -> np.ndarray:
        """Rows a0..a10 of the sample points."""
        F = self.backend.F
        inv = np.array([pow(comb(10, i), -1, self.p) for i in range(11)], dtype=np.int64)[:, None]
        return F * inv % self.p

    def invariant(self, expr: E.Expr) -> np.ndarray:
        if len(self._memo) > 4096:
            self._memo.clear()
        return self.backend.invariant(expr, self._memo)

    def product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return u * v % self.p

    def one(self) -> np.ndarray:
        return np.ones(self.npoints, dtype=np.int64)

    def new_span(self) -> IncrementalSpan:
        return IncrementalSpan(self.npoints, self.p)

    def vector(self, u: np.ndarray, span: IncrementalSpan) -> np.ndarray:
        return u

    @staticmethod
    def is_zero(u: np.ndarray) -> bool:
        return not u.any()


class MonomialCoordinates:
    """Images represented by the reduced polynomials themselves."""

    mode = "monomial"

    def __init__(self, p: int):
        self.p = p
        self.form = reduced_ground_form(p)
        self.ring = self.form.coeffs[0].ring
        self.index = MonomialIndex(p)
        self._memo: dict = {}

    def invariant(self, expr: E.Expr) -> Polynomial:
        return E.evaluate(expr, FormBackend(self.form), self._memo).invariant_value()

    def product(self, u: Polynomial, v: Polynomial) -> Polynomial:
        return u * v

    def one(self) -> Polynomial:
        return self.ring.one

    def new_span(self) -> IncrementalSpan:
        return IncrementalSpan(0, self.p)

    def vector(self, u: Polynomial, span: IncrementalSpan) -> np.ndarray:
        sparse = self.index.intern(u)
        span.grow(len(self.index))
        return self.index.dense(sparse, span.dim)

    @staticmethod
    def is_zero(u: Polynomial) -> bool:
        return not u


# -- random transvectant trees -----------------------------------------------------


def _achievable(d: int, order: int) -> bool:
    if d == 1:
        return order == 10
    return 0 <= order <= 10 * d and order % 2 == 0


def random_covariant_expr(d: int, rng: np.random.Generator, order: int | None = None,
                          max_order: int = DEFAULT_MAX_ORDER, tries: int = 40) -> E.Expr | None:
    """A random transvectant tree of degree ``d`` in the ground form (optionally of given order)."""
    if d == 1:
        return E.F if order is None or order == 10 else None
    for _ in range(tries):
        d1 = int(rng.integers(1, d))
        d2 = d - d1
        a = random_covariant_expr(d1, rng, None, max_order, tries)
        if a is None:
            continue
        oa = a.order
        if order is None:
            b = random_covariant_expr(d2, rng, None, max_order, tries)
            if b is None:
                continue
            ob = b.order
            ks = [kk for kk in range(min(oa, ob) + 1)
                  if oa + ob - 2 * kk <= max_order and not (a == b and kk % 2)]
            if not ks:
                continue
            return E.Tr(a, b, int(rng.choice(ks)))
        lo, hi = abs(oa - order), min(oa + order, max(max_order, 10))
        options = [ob for ob in range(lo, hi + 1, 2) if _achievable(d2, ob)]
        if not options:
            continue
        ob = int(rng.choice(options))
        b = random_covariant_expr(d2, rng, ob, max_order, tries)
        if b is None:
            continue
        kk = (oa + b.order - order) // 2
        if a == b and kk % 2:
            continue
        return E.Tr(a, b, kk)
    return None


def random_invariant_expr(m: int, rng: np.random.Generator, max_order: int = DEFAULT_MAX_ORDER) -> E.Expr | None:
    """A random invariant-valued transvectant tree of degree ``m`` (None if none was found)."""
    if m < 2:
        return None
    for _ in range(50):
        e = random_covariant_expr(m, rng, 0, max_order)
        if e is not None:
            return e
    return None


def candidate_rng(seed: int, m: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, m, index]))


@dataclass
class ReducedInvariant:
    """Image of a degree-``degree`` invariant: a polynomial in the six reduced
    variables over GF(p), or its value vector at the sample points."""

    source: object
    degree: int
    image: object

    def is_zero(self) -> bool:
        return not np.any(self.image) if isinstance(self.image, np.ndarray) else not self.image


def reduce(p: Polynomial, modulus: int = 109, source: object = None) -> ReducedInvariant:
    """Reduction chain applied to a homogeneous invariant polynomial in a0..a10."""
    degrees = {p.ring.mdeg(m) for m in p.terms}
    if len(degrees) > 1:
        raise ValueError("invariant polynomial must be homogeneous")
    degree = degrees.pop() if degrees else 0
    return ReducedInvariant(source, degree, reduce_polynomial(p, modulus))


def random_invariant(m: int, rng: np.random.Generator, coords, retries: int = 20,
                     max_order: int = DEFAULT_MAX_ORDER) -> ReducedInvariant | None:
    """Random degree-``m`` invariant with nonzero reduced image, or None after ``retries``."""
    for _ in range(retries):
        e = random_invariant_expr(m, rng, max_order)
        if e is None:
            continue
        img = coords.invariant(e)
        if not coords.is_zero(img):
            return ReducedInvariant(e, m, img)
    return None


# -- products ---------------------------------------------------------------------


def products_of_basics(basics: Sequence[tuple[str, int]], m: int) -> list[tuple[str, ...]]:
    """All monomials (as sorted symbol tuples) of total degree ``m`` in the given basics."""
    items = sorted(set(basics), key=lambda t: (t[1], t[0]))
    out: list[tuple[str, ...]] = []

    def rec(start: int, remaining: int, acc: list[str]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(items)):
            name, d = items[i]
            if d <= remaining:
                acc.append(name)
                rec(i, remaining - d, acc)
                acc.pop()

    rec(0, m, [])
    return out


# -- search state --------------------------------------------------------------------


@dataclass
class Generator:
    name: str
    degree: int
    expr: E.Expr
    image: object = field(default=None, repr=False)


@dataclass
class BasisElement:
    factors: tuple[str, ...]
    image: object = field(default=None, repr=False)


@dataclass
class DegreeReport:
    m: int
    target: int
    product_rank: int
    rank: int
    d_m: int
    status: str
    candidates: int
    generators: list[str]
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "m": self.m, "target": self.target, "product_rank": self.product_rank,
            "rank": self.rank, "d_m": self.d_m, "status": self.status,
            "candidates": self.candidates, "generators": self.generators,
        }


class BasisSearch:
    """Incremental search state: generators found so far and a spanning set of each
    ``I_m / j2 I_{m-2}``."""

    def __init__(self, p: int = 109, seed: int = 0, max_degree: int = 16, mode: str = "points",
                 npoints: int | None = None, budget_factor: int = 10, min_budget: int = 40,
                 max_order: int = DEFAULT_MAX_ORDER):
        PrimeField(p)
        self.p = p
        self.seed = seed
        self.max_degree = max_degree
        self.budget_factor = budget_factor
        self.min_budget = min_budget
        self.max_order = max_order
        if mode == "points":
            if npoints is None:
                npoints = default_npoints(max_degree)
            self.coords = PointCoordinates(p, npoints, seed)
        elif mode == "monomial":
            self.coords = MonomialCoordinates(p)
        else:
            raise ValueError(f"unknown coordinate mode {mode!r}")
        self.mode = mode
        self.generators: dict[str, Generator] = {}
        self.bases: dict[int, list[BasisElement]] = {0: [BasisElement((), self.coords.one())]}
        self.reports: dict[int, DegreeReport] = {}

    # -- helpers --

    def generators_of_degree(self, d: int) -> list[Generator]:
        return [g for g in self.generators.values() if g.degree == d]

    def d_table(self) -> dict[int, int]:
        return {m: r.d_m for m, r in sorted(self.reports.items()) if r.d_m}

    def completed(self) -> int:
        """Largest D such that every degree 2..D is complete."""
        d = 1
        while d + 1 in self.reports and self.reports[d + 1].status == "complete":
            d += 1
        return d

    def image_of(self, factors: Iterable[str]):
        img = self.coords.one()
        for name in factors:
            img = self.coords.product(img, self.generators[name].image)
        return img

    # -- one degree --

    def find_dm(self, m: int, budget: int | None = None) -> DegreeReport:
        """Saturate degree ``m``; requires every lower degree to be complete."""
        if m > 2 and self.completed() < m - 1:
            raise ValueError(f"degrees below {m} are not complete")
        start = time.perf_counter()
        if m == 2:
            # j2 is the invariant divided out by the reduction; it is basic and maps to 0
            self.generators["j2"] = Generator("j2", 2, INVARIANTS["j2"], self.coords.invariant(INVARIANTS["j2"]))
            self.bases[2] = []
            rep = DegreeReport(2, 0, 0, 0, 1, "complete", 0, ["j2"])
            self.reports[2] = rep
            return rep
        target = target_dim(m)
        span = self.coords.new_span()
        basis: list[BasisElement] = []
        seen: set[tuple[str, ...]] = set()
        for g in sorted(self.generators.values(), key=lambda g: (g.degree, g.name)):
            if g.name == "j2" or g.degree >= m or span.rank == target:
                continue
            for h in self.bases.get(m - g.degree, []):
                factors = tuple(sorted(h.factors + (g.name,)))
                if factors in seen:
                    continue
                seen.add(factors)
                img = self.coords.product(g.image, h.image)
                if span.insert(self.coords.vector(img, span)):
                    basis.append(BasisElement(factors, img))
                    if span.rank == target:
                        break
        product_rank = span.rank
        if budget is None:
            budget = max(self.budget_factor * target, self.min_budget)
        new: list[str] = []
        tried = 0
        while span.rank < target and tried < budget:
            rng = candidate_rng(self.seed, m, tried)
            tried += 1
            e = random_invariant_expr(m, rng, self.max_order)
            if e is None:
                continue
            img = self.coords.invariant(e)
            if self.coords.is_zero(img):
                continue
            if span.insert(self.coords.vector(img, span)):
                name = f"I{m}_{len(new) + 1}"
                self.generators[name] = Generator(name, m, e, img)
                basis.append(BasisElement((name,), img))
                new.append(name)
        status = "complete" if span.rank == target else "incomplete"
        self.bases[m] = basis
        rep = DegreeReport(m, target, product_rank, span.rank, len(new), status, tried, new,
                           time.perf_counter() - start)
        self.reports[m] = rep
        log.info("degree %d: target %d, products %d, rank %d, d_m %d (%s, %d candidates, %.1fs)",
                 m, target, product_rank, span.rank, len(new), status, tried, rep.seconds)
        return rep

    def run(self, max_degree: int | None = None, checkpoint: Path | None = None) -> dict[int, DegreeReport]:
        top = max_degree or self.max_degree
        m = self.completed() + 1
        while m <= top:
            rep = self.find_dm(m)
            if checkpoint is not None:
                self.save(checkpoint)
            if rep.status != "complete":
                break
            m += 1
        return self.reports

    # -- graded ideal dimension --

    def selection_images(self, d: int, symbols: Sequence[str] | None) -> list:
        """Images of the chosen ideal generators of degree ``d``: a spanning set of
        ``I_d / j2 I_{d-2}``, or the listed catalog invariants."""
        if symbols is None:
            if d not in self.bases or self.reports.get(d, None) is None or self.reports[d].status != "complete":
                raise ValueError(f"no complete spanning set for degree {d}")
            return [b.image for b in self.bases[d]]
        out = []
        for s in symbols:
            s = canonical(s)
            rec = INVARIANTS[s]
            if rec.degree != d:
                raise ValueError(f"{s} has degree {rec.degree}, not {d}")
            out.append(self.coords.invariant(rec))
        return out

    def graded_ideal_dimension(self, selection: dict[int, Sequence[str] | None], m: int) -> int:
        """Dimension of the degree-``m`` part of the ideal generated by the selection, modulo j2."""
        span = self.coords.new_span()
        target = target_dim(m)
        for d in sorted(selection):
            if d > m:
                continue
            gens = self.selection_images(d, selection[d])
            rest = self.bases.get(m - d)
            if rest is None or (m - d > 0 and (m - d not in self.reports or self.reports[m - d].status != "complete")):
                raise ValueError(f"missing spanning set for degree {m - d}")
            for g in gens:
                for h in rest:
                    span.insert(self.coords.vector(self.coords.product(g, h.image), span))
                    if span.rank == target:
                        return span.rank
        return span.rank

    # -- checkpoints --

    def to_data(self) -> dict:
        return {
            "schema": 1,
            "p": self.p, "seed": self.seed, "mode": self.mode,
            "npoints": getattr(self.coords, "npoints", None),
            "max_order": self.max_order,
            "generators": [{"name": g.name, "degree": g.degree, "expr": E.to_data(g.expr)}
                           for g in self.generators.values()],
            "bases": {str(m): [list(b.factors) for b in basis] for m, basis in self.bases.items() if m > 0},
            "reports": {str(m): r.as_dict() for m, r in self.reports.items()},
        }

    def save(self, path: Path) -> None:
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        tmp = path / "state.json.tmp"
        tmp.write_text(json.dumps(self.to_data(), indent=1))
        tmp.replace(path / "state.json")

    @classmethod
    def load(cls, path: Path, max_degree: int | None = None) -> "BasisSearch":
        data = json.loads((Path(path) / "state.json").read_text())
        done = [int(m) for m in data["reports"]]
        top = max_degree or max(done + [16])
        npoints = data["npoints"]
        if npoints is not None:
            npoints = max(npoints, default_npoints(top))
        self = cls(p=data["p"], seed=data["seed"], max_degree=top, mode=data["mode"],
                   npoints=npoints, max_order=data.get("max_order", DEFAULT_MAX_ORDER))
        for g in data["generators"]:
            e = E.from_data(g["expr"])
            self.generators[g["name"]] = Generator(g["name"], g["degree"], e, self.coords.invariant(e))
        for m, basis in data["bases"].items():
            self.bases[int(m)] = [BasisElement(tuple(fs), self.image_of(fs)) for fs in basis]
        for m, r in data["reports"].items():
            r = dict(r)
            self.reports[int(m)] = DegreeReport(**r)
        return self


def parse_selection(text: str) -> dict[int, list[str] | None]:
    """``"4,6,8,9,10=j10,14"`` -> {4: None, ..., 10: ["j10"], 14: None}."""
    out: dict[int, list[str] | None] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            d, names = part.split("=", 1)
            out[int(d)] = [n.strip() for n in names.split("|") if n.strip()]
        else:
            out[int(part)] = None
    return out

