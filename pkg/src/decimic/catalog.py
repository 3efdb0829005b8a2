"""Named covariants and invariants of the binary decimic, and the known hsops.

Recipes are expression trees over the ground form; expansions are computed
on demand and cached (in memory and, optionally, as JSON files on disk).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Sequence

from . import expr as E
from .binforms import BinaryForm, coefficient_ring, form_from_json, form_to_json, generic_form, transvectant
from .polyring import Number, Polynomial


class CatalogError(RuntimeError):
    """A recipe expanded to an unexpected order or degree."""


# -- the decimic recipes ----------------------------------------------------

f = E.F
k = E.Tr(f, f, 8)
m = E.Tr(f, k, 4)
q = E.Tr(f, f, 6)
r = E.Tr(f, q, 8)
k_q = E.Tr(q, q, 6)
k_m = E.Tr(m, m, 4)
m_q = E.Tr(q, k_q, 4)

COVARIANTS: dict[str, tuple[E.Expr, int, int]] = {
    "k": (k, 4, 2),
    "m": (m, 6, 3),
    "q": (q, 8, 2),
    "r": (r, 2, 3),
    "k_q": (k_q, 4, 4),
    "k_m": (k_m, 4, 6),
    "m_q": (m_q, 4, 6),
}

_j14 = E.Tr(E.Tr(k_q, k_q, 2), m_q, 4)
_A14 = E.Tr(E.Tr(k, k, 2) ** 2, E.Tr(m, m, 2), 8)

INVARIANTS: dict[str, E.Expr] = {
    "j2": E.Tr(f, f, 10),
    "j4": E.Tr(k, k, 4),
    "A6": E.Tr(m, m, 6),
    "C6": E.Tr(r, r, 2),
    "j8": E.Tr(k, k_m, 4),
    "j9": E.Tr(E.Tr(m, k, 1), k ** 2, 8),
    "j10": E.Tr(E.Tr(m, m, 2), k ** 2, 8),
    "j14": _j14,
    "A14": _A14,
    # auxiliaries used for the nullcone
    "j6": E.Tr(E.Tr(k, k, 2), k, 4),
    "B6": E.Tr(E.Tr(q, q, 4), q, 8),
    "A12": E.Tr(m ** 2, k ** 3, 12),
    "A4": E.Tr(q, q, 8),
    "A8": E.Tr(k_q, k_q, 4),
    "A10": E.Tr(m_q, k_q, 4),
    "B12": E.Tr(E.Tr(k_q, k_q, 2), k_q, 4),
    "j14+A14": E.Add(_j14, _A14),
}

# invariants whose common zero set is the nullcone of V_10
NULLCONE_SET = ("j2", "j4", "j6", "A6", "B6", "j8", "j9", "j10", "A12", "j14", "A14")

SYMBOL_ALIASES = {
    "j_2": "j2", "j_4": "j4", "j_6": "j6", "j_8": "j8", "j_9": "j9", "j_10": "j10", "j_14": "j14",
    "A_4": "A4", "A_6": "A6", "A_8": "A8", "A_10": "A10", "A_12": "A12", "A_14": "A14",
    "B_6": "B6", "B_12": "B12", "C_6": "C6", "kq": "k_q", "km": "k_m", "mq": "m_q",
}


def canonical(symbol: str) -> str:
    return SYMBOL_ALIASES.get(symbol, symbol)


def _invariant_degree(symbol: str) -> int:
    head = symbol.split("+")[0]
    return int(head.lstrip("jABC"))


# -- symbolic evaluation backend --------------------------------------------


class FormBackend:
    """Evaluate recipes on a concrete ground form (symbolic or numeric coefficients)."""

    def __init__(self, form: BinaryForm):
        self.form = form

    def ground(self, n: int) -> BinaryForm:
        if n != self.form.order:
            raise ValueError(f"recipe expects order {n}, ground form has order {self.form.order}")
        return self.form

    def fixed(self, coeffs) -> BinaryForm:
        ring = self.form.ring
        cs = tuple(ring.constant(c) for c in coeffs) if ring is not None else tuple(coeffs)
        return BinaryForm(len(coeffs) - 1, cs, 0)

    def transvectant(self, a: BinaryForm, b: BinaryForm, kk: int) -> BinaryForm:
        return transvectant(a, b, kk)

    def mul(self, a: BinaryForm, b: BinaryForm) -> BinaryForm:
        return transvectant(a, b, 0)

    def add(self, a: BinaryForm, b: BinaryForm) -> BinaryForm:
        return a + b


def evaluate_on(recipe: E.Expr, form: BinaryForm, memo: dict | None = None) -> BinaryForm:
    return E.evaluate(recipe, FormBackend(form), memo)


# -- catalog entries ---------------------------------------------------------


def cache_dir() -> Path | None:
    env = os.environ.get("DECIMIC_CACHE")
    if env == "":
        return None
    if env:
        return Path(env)
    return Path.home() / ".cache" / "decimic"


@dataclass
class NamedCovariant:
    symbol: str
    recipe: E.Expr
    order: int
    degree: int
    _expansion: BinaryForm | None = field(default=None, repr=False)

    @property
    def expansion(self) -> BinaryForm:
        if self._expansion is None:
            self._expansion = _expand(self.symbol, self.recipe)
            if (self._expansion.order, self._expansion.degree) != (self.order, self.degree):
                raise CatalogError(
                    f"{self.symbol}: expected V_{{{self.order},{self.degree}}}, "
                    f"got V_{{{self._expansion.order},{self._expansion.degree}}}"
                )
        return self._expansion

    @property
    def is_invariant(self) -> bool:
        return self.order == 0


@dataclass
class NamedInvariant(NamedCovariant):
    @property
    def polynomial(self) -> Polynomial:
        return self.expansion.coeffs[0]


_MEMO: dict = {}


def _expand(symbol: str, recipe: E.Expr) -> BinaryForm:
    directory = cache_dir()
    path = directory / f"{symbol}.json" if directory else None
    if path is not None and path.exists():
        try:
            return form_from_json(json.loads(path.read_text()))
        except (ValueError, KeyError):
            pass
    form = evaluate_on(recipe, generic_form(10, coefficient_ring(10, "QQ")), _MEMO)
    if path is not None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(form_to_json(form)))
            tmp.replace(path)
        except OSError:
            pass
    return form


def build_decimic_catalog(expand: Sequence[str] | bool = False) -> dict[str, NamedCovariant]:
    """All named covariants and invariants; ``expand`` forces expansion (all, or listed symbols)."""
    out: dict[str, NamedCovariant] = {}
    for sym, (rec, order, degree) in COVARIANTS.items():
        out[sym] = NamedCovariant(sym, rec, order, degree)
    for sym, rec in INVARIANTS.items():
        out[sym] = NamedInvariant(sym, rec, 0, _invariant_degree(sym))
    for sym, entry in out.items():
        if (entry.recipe.order, entry.recipe.degree) != (entry.order, entry.degree):
            raise CatalogError(f"{sym}: recipe has order {entry.recipe.order}, degree {entry.recipe.degree}")
    if expand is True:
        expand = list(out)
    for sym in expand or ():
        out[canonical(sym)].expansion
    return out


# -- systems of parameters ---------------------------------------------------


@dataclass(frozen=True)
class HsopSpec:
    n: int
    names: tuple[str, ...]
    recipes: tuple[E.Expr, ...]

    @property
    def degrees(self) -> list[int]:
        return [rec.degree for rec in self.recipes]


def _hsop_small(n: int) -> HsopSpec:
    g = E.Ground(n)
    if n == 2:
        return HsopSpec(2, ("(f,f)_2",), (E.Tr(g, g, 2),))
    if n == 4:
        return HsopSpec(4, ("(f,f)_4", "((f,f)_2,f)_4"), (E.Tr(g, g, 4), E.Tr(E.Tr(g, g, 2), g, 4)))
    if n == 6:
        kk = E.Tr(g, g, 4)
        mm = E.Tr(g, kk, 4)
        kk2 = E.Tr(kk, kk, 2)
        return HsopSpec(6, ("(f,f)_6", "(k,k)_4", "((k,k)_2,k)_4", "(m^2,(k,k)_2)_4"),
                        (E.Tr(g, g, 6), E.Tr(kk, kk, 4), E.Tr(kk2, kk, 4), E.Tr(mm ** 2, kk2, 4)))
    if n == 8:
        kk = E.Tr(g, g, 6)
        mm = E.Tr(g, kk, 4)
        kk2 = E.Tr(kk, kk, 2)
        return HsopSpec(8, ("(f,f)_8", "((f,f)_4,f)_8", "(k,k)_4", "(m,k)_4", "((k,k)_2,k)_4", "((k,k)_2,m)_4"),
                        (E.Tr(g, g, 8), E.Tr(E.Tr(g, g, 4), g, 8), E.Tr(kk, kk, 4), E.Tr(mm, kk, 4),
                         E.Tr(kk2, kk, 4), E.Tr(kk2, mm, 4)))
    raise ValueError(f"no system of parameters recorded for n={n}")


HSOP_10 = ("j2", "j4", "A6", "C6", "j8", "j9", "j10", "j14+A14")


def hsop(n: int) -> HsopSpec:
    """Homogeneous system of parameters for binary forms of order ``n`` in {2,4,6,8,10}."""
    if n == 10:
        return HsopSpec(10, HSOP_10, tuple(INVARIANTS[s] for s in HSOP_10))
    return _hsop_small(n)


# -- evaluation ----------------------------------------------------------------


def decimic_from_a(coeffs: Sequence[Number]) -> BinaryForm:
    """The decimic with ``a_i`` values ``coeffs`` (binomial convention)."""
    if len(coeffs) != 11:
        raise ValueError("need 11 coefficients a0..a10")
    return BinaryForm(10, tuple(comb(10, i) * c for i, c in enumerate(coeffs)), 1)


def eval_invariant(symbol: str, coeffs: Sequence[Number], modulus: int | None = None,
                   method: str = "recipe") -> Number:
    """Value of a catalog invariant at ``a0..a10 = coeffs``.

    ``method="recipe"`` runs the transvectant recipe on the numeric form;
    ``method="expansion"`` evaluates the cached polynomial expansion.
    """
    symbol = canonical(symbol)
    if symbol not in INVARIANTS:
        raise KeyError(f"unknown invariant {symbol!r}")
    if method == "expansion":
        from .polyring import evaluate, eval_mod_p

        poly = build_decimic_catalog()[symbol].expansion.coeffs[0]
        point = {f"a{i}": c for i, c in enumerate(coeffs)}
        if modulus is not None:
            return eval_mod_p(poly, {v: int(c) % modulus for v, c in point.items()}, modulus)
        return evaluate(poly, point)
    if modulus is not None:
        from .evalmod import eval_invariants_mod_p

        return eval_invariants_mod_p([INVARIANTS[symbol]], [list(coeffs)], modulus)[0][0]
    form = decimic_from_a([Fraction(c) if not isinstance(c, int) else c for c in coeffs])
    val = evaluate_on(INVARIANTS[symbol], form).invariant_value()
    return val


def eval_hsop(n: int, form: BinaryForm) -> list[Number]:
    params = hsop(n)
    memo: dict = {}
    return [evaluate_on(rec, form, memo).invariant_value() for rec in params.recipes]
