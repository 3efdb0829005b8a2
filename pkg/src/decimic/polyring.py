"""Sparse exact multivariate polynomials.

Monomials are packed into a single Python int, ``_BITS`` bits per variable,
variable ``i`` living at bit offset ``_BITS * i``.  Multiplying monomials is
then integer addition, which keeps the inner product loop cheap.

Coefficient domains: ``"ZZ"`` (Python ints), ``"QQ"`` (ints and
:class:`fractions.Fraction`) and a prime modulus ``p`` (ints in ``[0, p)``).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

_BITS = 16
_MASK = (1 << _BITS) - 1
_HALF = 1 << (_BITS - 1)

Number = Union[int, Fraction]


class DomainError(ValueError):
    """Raised when polynomials from incompatible rings are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Ring:
    """An ordered set of variable names plus a coefficient domain.

    Two rings are compatible when both the names and the domain agree.
    """

    def __init__(self, names: Iterable[str], domain: Union[str, int] = "ZZ"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if isinstance(domain, str):
            if domain not in ("ZZ", "QQ"):
                raise ValueError(f"unknown domain {domain!r}")
        else:
            domain = int(domain)
            if not is_prime(domain):
                raise ValueError(f"modulus {domain} is not prime")
        self.names = names
        self.nvars = len(names)
        self.domain = domain
        self.modulus = domain if isinstance(domain, int) else None
        self._index = {v: i for i, v in enumerate(names)}
        # sum-of-fields multiplier: (m * _ONES) >> _TOP & _MASK is the total degree
        self._ones = sum(1 << (_BITS * i) for i in range(self.nvars))
        self._top = _BITS * (self.nvars - 1)
        self._guard = sum(_HALF << (_BITS * i) for i in range(self.nvars))

    def __repr__(self) -> str:
        return f"Ring({list(self.names)!r}, {self.domain!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.domain == other.domain
        )

    def __hash__(self) -> int:
        return hash((self.names, self.domain))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    def with_domain(self, domain: Union[str, int]) -> "Ring":
        return Ring(self.names, domain)

    # -- monomial packing -------------------------------------------------

    def pack(self, exps: Iterable[int]) -> int:
        m = 0
        for i, e in enumerate(exps):
            if e < 0 or e >= _HALF:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << (_BITS * i)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (_BITS * i)) & _MASK for i in range(self.nvars))

    def mdeg(self, m: int) -> int:
        if self.nvars == 0:
            return 0
        return ((m * self._ones) >> self._top) & _MASK

    def mdivides(self, a: int, b: int) -> bool:
        """True when monomial ``a`` divides monomial ``b``."""
        g = self._guard
        return ((b | g) - a) & g == g

    def mlcm(self, a: int, b: int) -> int:
        out = 0
        for i in range(self.nvars):
            s = _BITS * i
            out |= max((a >> s) & _MASK, (b >> s) & _MASK) << s
        return out

    def var_monomial(self, name: str, power: int = 1) -> int:
        return power << (_BITS * self.index(name))

    # -- coefficients -----------------------------------------------------

    def coerce(self, c: Number) -> Number:
        """Normalize a coefficient into this ring's domain."""
        p = self.modulus
        if p is not None:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return c % p
        if isinstance(c, Fraction):
            if c.denominator == 1:
                return c.numerator
            if self.domain == "ZZ":
                raise ArithmeticError(f"non-integral coefficient {c} in ZZ")
            return c
        return int(c)

    # -- constructors -----------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Number) -> "Polynomial":
        return Polynomial(self, {0: c})

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.var_monomial(name): 1}, normalized=True)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.names)

    def from_terms(self, terms: Iterable[tuple[Iterable[int], Number]]) -> "Polynomial":
        out: dict[int, Number] = {}
        for exps, c in terms:
            m = self.pack(exps)
            out[m] = out.get(m, 0) + c
        return Polynomial(self, out)

    def from_dict(self, d: Mapping[str, int] | Mapping[tuple, Number]) -> "Polynomial":
        """Build from ``{exponent tuple: coefficient}``."""
        return self.from_terms(d.items())

    def parse(self, text: str) -> "Polynomial":
        return from_text(self, text)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: Ring, terms: Mapping[int, Number], normalized: bool = False):
        self.ring = ring
        if normalized:
            self.terms = dict(terms)
        else:
            co = ring.coerce
            out = {}
            for m, c in terms.items():
                c = co(c)
                if c:
                    out[m] = c
            self.terms = out

    @classmethod
    def _raw(cls, ring: Ring, terms: dict[int, Number]) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # -- basic protocol ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Number:
        return self.terms.get(0, 0)

    def iter_terms(self) -> Iterator[tuple[tuple[int, ...], Number]]:
        """Terms as ``(exponent tuple, coefficient)`` in canonical (graded lex, descending) order."""
        un = self.ring.unpack
        items = [(un(m), c) for m, c in self.terms.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return iter(items)

    def coefficient(self, exps: Iterable[int]) -> Number:
        return self.terms.get(self.ring.pack(exps), 0)

    @cached_property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        md = self.ring.mdeg
        return max(md(m) for m in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index(v) for v in names]
        best = -1
        for m in self.terms:
            d = sum((m >> (_BITS * i)) & _MASK for i in idx)
            best = max(best, d)
        return best

    def variables(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m
        return {v for i, v in enumerate(self.ring.names) if (used >> (_BITS * i)) & _MASK}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise DomainError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.ring.modulus
        if p is None:
            return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})
        return Polynomial._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Number) -> "Polynomial":
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def div_exact(self, d: int) -> "Polynomial":
        """Divide every coefficient by the integer ``d``; in ZZ the division must be exact."""
        if d == 0:
            raise ZeroDivisionError("division by zero")
        p = self.ring.modulus
        if p is not None:
            inv = pow(d % p, -1, p)
            return Polynomial._raw(self.ring, {m: c * inv % p for m, c in self.terms.items()})
        if self.ring.domain == "ZZ":
            out = {}
            for m, c in self.terms.items():
                q, r = divmod(c, d)
                if r:
                    raise ArithmeticError(f"coefficient {c} not divisible by {d}")
                out[m] = q
            return Polynomial._raw(self.ring, out)
        return Polynomial(self.ring, {m: Fraction(c, 1) / d for m, c in self.terms.items()})

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c))
        return g

    # -- conversions ------------------------------------------------------

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-express in ``ring``; every used variable must exist there."""
        if ring == self.ring:
            return self
        src = self.ring
        if ring.names == src.names:
            return Polynomial(ring, self.terms)
        pos = [ring.index(v) if v in ring._index else None for v in src.names]
        out: dict[int, Number] = {}
        for m, c in self.terms.items():
            nm = 0
            for i, e in enumerate(src.unpack(m)):
                if e:
                    if pos[i] is None:
                        raise DomainError(f"variable {src.names[i]} missing in target ring")
                    nm |= e << (_BITS * pos[i])
            out[nm] = out.get(nm, 0) + c
        return Polynomial(ring, out)

    def mod_p(self, p: int) -> "Polynomial":
        return self.to_ring(self.ring.with_domain(p))


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Coefficientwise sum with zero terms dropped."""
    p._check(q)
    if len(p.terms) < len(q.terms):
        p, q = q, p
    out = dict(p.terms)
    mod = p.ring.modulus
    if mod is None:
        for m, c in q.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    else:
        for m, c in q.terms.items():
            v = (out.get(m, 0) + c) % mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial._raw(p.ring, out)


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Distributive product."""
    p._check(q)
    if not p.terms or not q.terms:
        return p.ring.zero
    if p.total_degree + q.total_degree >= _HALF:
        raise OverflowError("product degree exceeds monomial packing range")
    if len(p.terms) > len(q.terms):
        p, q = q, p
    out: dict[int, Number] = {}
    get = out.get
    qi = list(q.terms.items())
    for m1, c1 in p.terms.items():
        for m2, c2 in qi:
            k = m1 + m2
            out[k] = get(k, 0) + c1 * c2
    mod = p.ring.modulus
    if mod is None:
        return Polynomial._raw(p.ring, {m: c for m, c in out.items() if c})
    return Polynomial._raw(p.ring, {m: c % mod for m, c in out.items() if c % mod})


def diff(p: Polynomial, v: str, times: int = 1) -> Polynomial:
    """Iterated formal partial derivative."""
    ring = p.ring
    s = _BITS * ring.index(v)
    out: dict[int, Number] = {}
    for m, c in p.terms.items():
        e = (m >> s) & _MASK
        if e < times:
            continue
        f = 1
        for j in range(times):
            f *= e - j
        out[m - (times << s)] = c * f
    return Polynomial(ring, out)


def substitute(p: Polynomial, bindings: Mapping[str, Union[Polynomial, Number]],
               target: Ring | None = None) -> Polynomial:
    """Simultaneously replace variables by polynomials of ``target`` (default: ``p.ring``).

    Unbound variables are carried over by name, so ``target`` must contain them.
    """
    ring = p.ring
    target = target or ring
    images: list[Polynomial] = []
    for i, v in enumerate(ring.names):
        if v in bindings:
            b = bindings[v]
            if isinstance(b, Polynomial):
                if b.ring != target:
                    raise DomainError(f"binding for {v} lives in {b.ring!r}, expected {target!r}")
                images.append(b)
            else:
                images.append(target.constant(b))
        elif v in target._index:
            images.append(target.gen(v))
        else:
            images.append(None)
    for v in bindings:
        ring.index(v)
    # cache powers per variable; many monomials share them
    powers: list[dict[int, Polynomial]] = [dict() for _ in images]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            if images[i] is None:
                raise DomainError(f"variable {ring.names[i]} has no image in target ring")
            cache[e] = images[i] ** e
        return cache[e]

    acc: dict[int, Number] = {}
    mod = target.modulus
    for m, c in p.terms.items():
        term = target.constant(c)
        for i, e in enumerate(ring.unpack(m)):
            if e:
                term = term * power(i, e)
                if not term:
                    break
        for k, v in term.terms.items():
            acc[k] = acc.get(k, 0) + v
    if mod is not None:
        acc = {k: v % mod for k, v in acc.items()}
    return Polynomial(target, acc)


def evaluate(p: Polynomial, point: Mapping[str, Number]) -> Number:
    """Exact value of ``p`` at a point binding every variable that occurs."""
    total: Number = 0
    names = p.ring.names
    for m, c in p.terms.items():
        v = c
        for i, e in enumerate(p.ring.unpack(m)):
            if e:
                try:
                    v *= point[names[i]] ** e
                except KeyError:
                    raise KeyError(f"unbound variable {names[i]}") from None
        total += v
    if p.ring.modulus is not None:
        total %= p.ring.modulus
    return total


def eval_mod_p(p: Polynomial, point: Mapping[str, int], modulus: int) -> int:
    """Value of ``p`` at ``point`` in the prime field of order ``modulus``."""
    if not is_prime(modulus):
        raise ValueError(f"modulus {modulus} is not prime")
    names = p.ring.names
    total = 0
    for m, c in p.terms.items():
        if isinstance(c, Fraction):
            v = c.numerator * pow(c.denominator, -1, modulus)
        else:
            v = c
        for i, e in enumerate(p.ring.unpack(m)):
            if e:
                try:
                    v = v * pow(point[names[i]], e, modulus) % modulus
                except KeyError:
                    raise KeyError(f"unbound variable {names[i]}") from None
        total += v
    return total % modulus


def homogeneous_component(p: Polynomial, names: Iterable[str], degree: int) -> Polynomial:
    """Terms whose total degree in ``names`` equals ``degree``."""
    idx = [p.ring.index(v) for v in names]
    out = {}
    for m, c in p.terms.items():
        if sum((m >> (_BITS * i)) & _MASK for i in idx) == degree:
            out[m] = c
    return Polynomial._raw(p.ring, out)


def coefficient_in(p: Polynomial, names: Iterable[str], exps: Iterable[int]) -> Polynomial:
    """Coefficient of the monomial ``prod(names**exps)``, as a polynomial in the other variables."""
    names = list(names)
    exps = list(exps)
    idx = [p.ring.index(v) for v in names]
    target = 0
    sel = 0
    for i, e in zip(idx, exps):
        target |= e << (_BITS * i)
        sel |= _MASK << (_BITS * i)
    out = {}
    for m, c in p.terms.items():
        if m & sel == target:
            out[m - target] = c
    return Polynomial._raw(p.ring, out)


# -- serialization --------------------------------------------------------


def _fmt_coeff(c: Number) -> str:
    return str(c)


def to_text(p: Polynomial) -> str:
    """Render as ``c*a0^e0*...`` terms joined by `` + ``/`` - ``, graded lex descending."""
    if not p.terms:
        return "0"
    names = p.ring.names
    parts = []
    for exps, c in p.iter_terms():
        neg = c < 0 if p.ring.modulus is None else False
        mag = -c if neg else c
        factors = []
        for v, e in zip(names, exps):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        if factors:
            body = "*".join(factors) if mag == 1 else "*".join([_fmt_coeff(mag)] + factors)
        else:
            body = _fmt_coeff(mag)
        parts.append(("-" if neg else "+", body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def from_text(ring: Ring, text: str) -> Polynomial:
    """Parse the output of :func:`to_text` (and mild variations of it)."""
    text = text.strip()
    if text in ("", "0"):
        return ring.zero
    if text[0] not in "+-":
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)[1:]
    acc: dict[int, Number] = {}
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        coeff: Number = 1
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"malformed term {body!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor) if "/" in factor else int(factor)
                continue
            name, _, e = factor.partition("^")
            exps[ring.index(name)] += int(e) if e else 1
        if sign == "-":
            coeff = -coeff
        m = ring.pack(exps)
        acc[m] = acc.get(m, 0) + coeff
    return Polynomial(ring, acc)


def to_json(p: Polynomial) -> dict:
    return {
        "variables": list(p.ring.names),
        "domain": p.ring.domain,
        "terms": [[list(e), str(c)] for e, c in p.iter_terms()],
    }


def from_json(data: dict | str, ring: Ring | None = None) -> Polynomial:
    if isinstance(data, str):
        data = json.loads(data)
    if ring is None:
        ring = Ring(data["variables"], data.get("domain", "ZZ"))
    terms = []
    for exps, c in data["terms"]:
        terms.append((exps, Fraction(c) if "/" in c else int(c)))
    return ring.from_terms(terms)
