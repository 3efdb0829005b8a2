"""Binary forms, transvectants and the SL2 substitution action.

A form of order ``n`` is stored as the list of its coefficients
``c[0..n]``, ``c[i]`` multiplying ``x^(n-i) * y^i``.  Coefficients may be
:class:`~decimic.polyring.Polynomial` objects (symbolic covariants) or plain
numbers (``int``/``Fraction``, for evaluating at a concrete form).

The transvectant is normalized as

    (f, g)_k = (n-k)!(m-k)!/(n! m!) * sum_i (-1)^i C(k,i)
               d^k f / dx^(k-i) dy^i  *  d^k g / dx^i dy^(k-i)

which gives ``(f, f)_10 = 2 a0 a10 - 20 a1 a9 + ... - 252 a5^2`` for the
generic decimic in binomial convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence, Union

from .polyring import Number, Polynomial, Ring, _BITS, from_json, to_json, to_text

Coeff = Union[Polynomial, int, Fraction]


def a_names(n: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(n + 1))


@lru_cache(maxsize=None)
def coefficient_ring(n: int = 10, domain="ZZ") -> Ring:
    return Ring(a_names(n), domain)


def _ff(a: int, k: int) -> int:
    """Falling factorial a (a-1) ... (a-k+1), zero when k > a."""
    if k > a:
        return 0
    out = 1
    for j in range(k):
        out *= a - j
    return out


@lru_cache(maxsize=None)
def transvectant_weights(n: int, m: int, k: int) -> tuple[tuple[tuple[int, int, int], ...], int]:
    """Integer bilinear weights of the k-th transvectant.

    Returns ``(entries, denom)``: the output coefficient at ``y^s`` equals
    ``sum t * A[a] * B[b] / denom`` over entries ``(a, b, t)`` with ``s = a + b - k``.
    """
    entries = []
    for a in range(n + 1):
        for b in range(m + 1):
            s = a + b - k
            if s < 0 or s > n + m - 2 * k:
                continue
            t = 0
            for i in range(k + 1):
                t += (-1) ** i * comb(k, i) * _ff(n - a, k - i) * _ff(a, i) * _ff(m - b, i) * _ff(b, k - i)
            if t:
                entries.append((a, b, t))
    denom = factorial(n) * factorial(m) // (factorial(n - k) * factorial(m - k))
    return tuple(entries), denom


@dataclass(frozen=True)
class BinaryForm:
    """A form of given ``order`` in x, y with coefficient list ``coeffs``; ``degree`` counts
    how many copies of the ground form went into it."""

    order: int
    coeffs: tuple
    degree: int = 0

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, i: int) -> Coeff:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def ring(self) -> Ring | None:
        for c in self.coeffs:
            if isinstance(c, Polynomial):
                return c.ring
        return None

    def coefficient(self, xexp: int, yexp: int) -> Coeff:
        if xexp + yexp != self.order:
            raise ValueError("monomial not of the form's order")
        return self.coeffs[yexp]

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.order != self.order:
            raise ValueError("cannot add forms of different order")
        return BinaryForm(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                          max(self.degree, other.degree))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.order, tuple(-c for c in self.coeffs), self.degree)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            return form_product(self, other)
        return BinaryForm(self.order, tuple(c * other for c in self.coeffs), self.degree)

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "BinaryForm":
        return BinaryForm(self.order, tuple(fn(c) for c in self.coeffs), self.degree)

    def invariant_value(self) -> Coeff:
        if self.order != 0:
            raise ValueError(f"form has order {self.order}, not an invariant")
        return self.coeffs[0]


def generic_form(n: int, ring: Ring | None = None) -> BinaryForm:
    """``sum C(n,i) a_i x^(n-i) y^i`` over ``ring`` (default: integer ring in a0..an)."""
    if n < 1:
        raise ValueError("order must be positive")
    ring = ring or coefficient_ring(n)
    return BinaryForm(n, tuple(ring.gen(f"a{i}") * comb(n, i) for i in range(n + 1)), 1)


def numeric_form(coeffs: Sequence[Number], binomial: bool = False) -> BinaryForm:
    """Form with the given plain coefficients (or ``a_i`` values when ``binomial``)."""
    n = len(coeffs) - 1
    if binomial:
        coeffs = [comb(n, i) * c for i, c in enumerate(coeffs)]
    return BinaryForm(n, tuple(coeffs), 1)


def constant_form(order: int, coeffs: Sequence[int], like: BinaryForm | None = None) -> BinaryForm:
    """A fixed form such as ``x^4``; coefficients promoted into ``like``'s coefficient ring."""
    ring = like.ring if like is not None else None
    if ring is not None:
        cs = tuple(ring.constant(c) for c in coeffs)
    else:
        cs = tuple(coeffs)
    return BinaryForm(order, cs, 0)


def _zero_like(c: Coeff) -> Coeff:
    return c.ring.zero if isinstance(c, Polynomial) else 0


def _exact_divide(c: Coeff, d: int) -> Coeff:
    if d == 1:
        return c
    if isinstance(c, Polynomial):
        return c.div_exact(d)
    if isinstance(c, int) and c % d == 0:
        return c // d
    q = Fraction(c) / d
    return q.numerator if q.denominator == 1 else q


def transvectant(f: BinaryForm, g: BinaryForm, k: int) -> BinaryForm:
    """The normalized k-th transvectant ``(f, g)_k`` of order ``n + m - 2k``."""
    n, m = f.order, g.order
    if not 0 <= k <= min(n, m):
        raise ValueError(f"transvectant index {k} out of range for orders {n}, {m}")
    entries, denom = transvectant_weights(n, m, k)
    size = n + m - 2 * k + 1
    ring = f.ring or g.ring
    if ring is not None:
        A = [c if isinstance(c, Polynomial) else ring.constant(c) for c in f.coeffs]
        B = [c if isinstance(c, Polynomial) else ring.constant(c) for c in g.coeffs]
        acc: list[dict] = [dict() for _ in range(size)]
        for a, b, t in entries:
            pa, pb = A[a].terms, B[b].terms
            if not pa or not pb:
                continue
            if len(pa) > len(pb):
                pa, pb = pb, pa
            target = acc[a + b - k]
            get = target.get
            q_items = list(pb.items())
            for m1, c1 in pa.items():
                tc = t * c1
                for m2, c2 in q_items:
                    key = m1 + m2
                    target[key] = get(key, 0) + tc * c2
        coeffs = []
        for d in acc:
            poly = Polynomial(ring, {key: v for key, v in d.items() if v}) if ring.modulus is None \
                else Polynomial(ring, d)
            coeffs.append(_exact_divide(poly, denom))
    else:
        out: list = [0] * size
        for a, b, t in entries:
            ca, cb = f.coeffs[a], g.coeffs[b]
            if ca and cb:
                out[a + b - k] += t * ca * cb
        coeffs = [_exact_divide(c, denom) for c in out]
    return BinaryForm(n + m - 2 * k, tuple(coeffs), f.degree + g.degree)


def form_product(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Product of two forms; equals ``(f, g)_0``."""
    return transvectant(f, g, 0)


def form_power(f: BinaryForm, e: int) -> BinaryForm:
    out = f
    for _ in range(e - 1):
        out = form_product(out, f)
    return out


def _linear_powers(u: tuple[int, int], v: tuple[int, int], n: int) -> list[list[int]]:
    """Coefficient lists of ``U^(n-i) V^i`` for linear forms U, V given as (x-coeff, y-coeff)."""

    def mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    out[i + j] += a * b
        return out

    upow = [[1]]
    vpow = [[1]]
    for _ in range(n):
        upow.append(mul(upow[-1], list(u)))
        vpow.append(mul(vpow[-1], list(v)))
    return [mul(upow[n - i], vpow[i]) for i in range(n + 1)]


def apply_sl2(f: BinaryForm, M: Sequence[Sequence[int]]) -> BinaryForm:
    """Substitute ``(x, y) -> (x, y) . M``, i.e. x -> M00 x + M10 y, y -> M01 x + M11 y."""
    (p, q), (r, s) = M
    if p * s - q * r != 1:
        raise ValueError(f"matrix {M} does not have determinant 1")
    n = f.order
    lists = _linear_powers((p, r), (q, s), n)
    coeffs = []
    for j in range(n + 1):
        acc = None
        for i in range(n + 1):
            w = lists[i][j]
            if w and f.coeffs[i]:
                term = f.coeffs[i] * w
                acc = term if acc is None else acc + term
        coeffs.append(acc if acc is not None else _zero_like(f.coeffs[0]))
    return BinaryForm(n, tuple(coeffs), f.degree)


# -- full polynomial views ----------------------------------------------------


def xy_ring(ring: Ring) -> Ring:
    """``ring`` extended by the form variables x, y."""
    return Ring(ring.names + ("x", "y"), ring.domain)


def to_polynomial(f: BinaryForm, ring: Ring | None = None) -> Polynomial:
    """The form as a polynomial in its coefficient variables plus x, y."""
    base = f.ring or ring or Ring((), "ZZ")
    R = xy_ring(base)
    ix, iy = R.index("x"), R.index("y")
    out: dict[int, Number] = {}
    for i, c in enumerate(f.coeffs):
        mono = ((f.order - i) << (_BITS * ix)) | (i << (_BITS * iy))
        if isinstance(c, Polynomial):
            for m, v in c.terms.items():
                out[m | mono] = v
        elif c:
            out[mono] = c
    return Polynomial(R, out)


def from_polynomial(p: Polynomial, order: int) -> BinaryForm:
    """Inverse of :func:`to_polynomial`; ``p`` must be homogeneous of ``order`` in x, y."""
    R = p.ring
    base = Ring(tuple(v for v in R.names if v not in ("x", "y")), R.domain)
    ix, iy = R.index("x"), R.index("y")
    buckets: list[dict] = [dict() for _ in range(order + 1)]
    for m, c in p.terms.items():
        ex = (m >> (_BITS * ix)) & ((1 << _BITS) - 1)
        ey = (m >> (_BITS * iy)) & ((1 << _BITS) - 1)
        if ex + ey != order:
            raise ValueError(f"polynomial is not homogeneous of order {order} in x, y")
        rest = m - (ex << (_BITS * ix)) - (ey << (_BITS * iy))
        buckets[ey][rest] = c
    coeffs = tuple(Polynomial(R, b).to_ring(base) if b else base.zero for b in buckets)
    return BinaryForm(order, coeffs, 0)


def transvectant_by_derivatives(f: Polynomial, g: Polynomial, n: int, m: int, k: int) -> Polynomial:
    """Transvectant computed literally from partial derivatives of full polynomials in x, y."""
    from .polyring import diff

    total = f.ring.zero
    for i in range(k + 1):
        df = diff(diff(f, "x", k - i), "y", i)
        dg = diff(diff(g, "x", i), "y", k - i)
        total = total + (df * dg) * ((-1) ** i * comb(k, i))
    num = factorial(n - k) * factorial(m - k)
    den = factorial(n) * factorial(m)
    if f.ring.domain == "ZZ":
        return (total * num).div_exact(den)
    return total * Fraction(num, den)


# -- presentation -----------------------------------------------------------


def pretty(f: BinaryForm) -> str:
    """Layout used in print: the y^n coefficient first, then x y^(n-1), ..., x^n."""
    parts = []
    for i in range(f.order, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        ex, ey = f.order - i, i
        mono = "".join(
            s for s in (
                "" if ex == 0 else ("x" if ex == 1 else f"x^{ex}"),
                "" if ey == 0 else ("y" if ey == 1 else f"y^{ey}"),
            )
        )
        body = to_text(c) if isinstance(c, Polynomial) else str(c)
        parts.append(f"({body}){mono}" if mono else f"({body})")
    return " +\n".join(parts) if parts else "0"


def form_to_json(f: BinaryForm) -> dict:
    poly = to_polynomial(f)
    data = to_json(poly)
    return {"order": f.order, "degree": f.degree, "variables": data["variables"],
            "domain": data["domain"], "terms": data["terms"]}


def form_from_json(data: dict) -> BinaryForm:
    poly = from_json(data)
    form = from_polynomial(poly, data["order"])
    return BinaryForm(form.order, form.coeffs, data["degree"])
