"""Transvectant expression trees.

An expression is built from the ground form ``f``, fixed forms (``x^4``),
transvectants, products and sums.  Trees are immutable, hashable and
serialize to nested JSON lists, so the same recipe can be evaluated
symbolically, at exact rational forms, or at batches of points mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol


class Expr:
    """Base class; subclasses carry ``order`` and ``degree`` (in the ground form)."""

    order: int
    degree: int

    def __mul__(self, other: "Expr") -> "Expr":
        return Mul(self, other)

    def __add__(self, other: "Expr") -> "Expr":
        return Add(self, other)

    def __pow__(self, e: int) -> "Expr":
        out: Expr = self
        for _ in range(e - 1):
            out = Mul(out, self)
        return out


@dataclass(frozen=True)
class Ground(Expr):
    n: int = 10

    @property
    def order(self) -> int:
        return self.n

    @property
    def degree(self) -> int:
        return 1

    def __str__(self) -> str:
        return "f"


@dataclass(frozen=True)
class Fixed(Expr):
    """A constant form, coefficients listed from x^n down to y^n."""

    coeffs: tuple[int, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return self.name or f"[{','.join(map(str, self.coeffs))}]"


@dataclass(frozen=True)
class Tr(Expr):
    left: Expr
    right: Expr
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= min(self.left.order, self.right.order):
            raise ValueError(f"index {self.k} invalid for orders {self.left.order}, {self.right.order}")

    @property
    def order(self) -> int:
        return self.left.order + self.right.order - 2 * self.k

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def __str__(self) -> str:
        return f"({self.left},{self.right})_{self.k}"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    @property
    def order(self) -> int:
        return self.left.order + self.right.order

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def __str__(self) -> str:
        if self.left == self.right:
            return f"{_wrap(self.left)}^2"
        return f"{_wrap(self.left)}*{_wrap(self.right)}"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.left.order != self.right.order or self.left.degree != self.right.degree:
            raise ValueError("summands must share order and degree")

    @property
    def order(self) -> int:
        return self.left.order

    @property
    def degree(self) -> int:
        return self.left.degree

    def __str__(self) -> str:
        return f"{self.left}+{self.right}"


def _wrap(e: Expr) -> str:
    return f"[{e}]" if isinstance(e, Add) else str(e)


F = Ground(10)
X4 = Fixed((1, 0, 0, 0, 0), "x^4")
X3Y = Fixed((0, 1, 0, 0, 0), "x^3y")


class Backend(Protocol):
    def ground(self, n: int): ...
    def fixed(self, coeffs: tuple[int, ...]): ...
    def transvectant(self, a, b, k: int): ...
    def mul(self, a, b): ...
    def add(self, a, b): ...


def evaluate(expr: Expr, backend: Backend, memo: dict | None = None):
    """Evaluate ``expr`` bottom-up, sharing identical subtrees through ``memo``."""
    if memo is None:
        memo = {}
    stack = [expr]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if isinstance(node, Ground):
            memo[node] = backend.ground(node.n)
            stack.pop()
        elif isinstance(node, Fixed):
            memo[node] = backend.fixed(node.coeffs)
            stack.pop()
        else:
            pending = [c for c in (node.left, node.right) if c not in memo]
            if pending:
                stack.extend(pending)
                continue
            a, b = memo[node.left], memo[node.right]
            if isinstance(node, Tr):
                memo[node] = backend.transvectant(a, b, node.k)
            elif isinstance(node, Mul):
                memo[node] = backend.mul(a, b)
            else:
                memo[node] = backend.add(a, b)
            stack.pop()
    return memo[expr]


def to_data(expr: Expr) -> list:
    if isinstance(expr, Ground):
        return ["f", expr.n]
    if isinstance(expr, Fixed):
        return ["fixed", list(expr.coeffs), expr.name]
    if isinstance(expr, Tr):
        return ["tr", expr.k, to_data(expr.left), to_data(expr.right)]
    if isinstance(expr, Mul):
        return ["mul", to_data(expr.left), to_data(expr.right)]
    return ["add", to_data(expr.left), to_data(expr.right)]


def from_data(data: list) -> Expr:
    tag = data[0]
    if tag == "f":
        return Ground(data[1])
    if tag == "fixed":
        return Fixed(tuple(data[1]), data[2] if len(data) > 2 else "")
    if tag == "tr":
        return Tr(from_data(data[2]), from_data(data[3]), data[1])
    if tag == "mul":
        return Mul(from_data(data[1]), from_data(data[2]))
    if tag == "add":
        return Add(from_data(data[1]), from_data(data[2]))
    raise ValueError(f"unknown expression tag {tag!r}")


def walk(expr: Expr, fn: Callable[[Expr], None]) -> None:
    fn(expr)
    if isinstance(expr, (Tr, Mul, Add)):
        walk(expr.left, fn)
        walk(expr.right, fn)


def size(expr: Expr) -> int:
    seen: set = set()
    walk(expr, seen.add)
    return len(seen)
