"""Finite quandles, 3-cocycles with values in <t>, and Laurent polynomials.

Cocycles are stored additively: ``exponents[x][y][z] = e`` means
theta(x, y, z) = t^e. Products of Boltzmann weights therefore become sums of
integers, and the cocycle identity becomes an additive identity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Mapping


@dataclass(frozen=True)
class Quandle:
    """``table[a][b] = a * b`` on elements 0..size-1."""

    size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        if self.size < 1 or len(self.table) != self.size:
            raise ValueError("table must be size x size with size >= 1")
        for row in self.table:
            if len(row) != self.size or any(not 0 <= v < self.size for v in row):
                raise ValueError("table entries must lie in 0..size-1")

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def right_divide(self, a: int, b: int) -> int:
        """The unique c with c * b = a."""
        for c in range(self.size):
            if self.table[c][b] == a:
                return c
        raise ValueError(f"right translation by {b} is not onto")

    def to_json(self) -> str:
        return json.dumps({"size": self.size, "table": [list(r) for r in self.table]})

    @classmethod
    def from_dict(cls, data: Mapping) -> Quandle:
        return cls(int(data["size"]), data["table"])


def trivial_quandle(n: int) -> Quandle:
    if n < 1:
        raise ValueError("trivial quandle needs at least one element")
    return Quandle(n, tuple(tuple(a for _ in range(n)) for a in range(n)))


def dihedral_quandle(n: int) -> Quandle:
    return Quandle(n, tuple(tuple((2 * b - a) % n for b in range(n)) for a in range(n)))


def conjugation_quandle(elements: list, mul: Callable, inv: Callable) -> tuple[Quandle, list]:
    """Conjugation quandle x * y = y x y^-1 of a finite group, with its element list."""
    index = {g: k for k, g in enumerate(elements)}
    table = [[index[mul(mul(y, x), inv(y))] for y in elements] for x in elements]
    return Quandle(len(elements), table), elements


def validate_quandle(q: Quandle) -> list[str]:
    """Return a list of axiom violations; empty means q is a quandle."""
    problems = []
    X = range(q.size)
    for a in X:
        if q.op(a, a) != a:
            problems.append(f"(i) idempotence fails: {a}*{a} = {q.op(a, a)}")
    for b in X:
        images = [q.op(a, b) for a in X]
        if len(set(images)) != q.size:
            problems.append(f"(ii) right translation by {b} is not a bijection: {images}")
    for a, b, c in itertools.product(X, repeat=3):
        lhs = q.op(q.op(a, b), c)
        rhs = q.op(q.op(a, c), q.op(b, c))
        if lhs != rhs:
            problems.append(f"(iii) self-distributivity fails at {(a, b, c)}: {lhs} != {rhs}")
    return problems


@dataclass(frozen=True)
class Cocycle3:
    quandle: Quandle
    exponents: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        n = self.quandle.size
        ex = tuple(tuple(tuple(int(v) for v in row) for row in plane)
                   for plane in self.exponents)
        if len(ex) != n or any(len(p) != n or any(len(r) != n for r in p) for p in ex):
            raise ValueError("exponent table must be size^3")
        object.__setattr__(self, "exponents", ex)

    def __call__(self, x: int, y: int, z: int) -> int:
        return self.exponents[x][y][z]

    @classmethod
    def from_function(cls, q: Quandle, f: Callable[[int, int, int], int]) -> Cocycle3:
        n = q.size
        return cls(q, tuple(tuple(tuple(f(x, y, z) for z in range(n))
                                  for y in range(n)) for x in range(n)))

    def perturbed(self, x: int, y: int, z: int, delta: int = 1) -> Cocycle3:
        ex = [[list(r) for r in p] for p in self.exponents]
        ex[x][y][z] += delta
        return Cocycle3(self.quandle, ex)

    def to_json(self) -> str:
        return json.dumps({"quandle": json.loads(self.quandle.to_json()),
                           "exponents": [[list(r) for r in p] for p in self.exponents]})


def _theta_closed_form(n: int, last: bool) -> Cocycle3:
    if n != 3:
        raise ValueError("the closed-form cocycles are defined on T_3 only")

    def f(x, y, z):
        return (x - y) * (y - z) * (z - x) * (z if last else x)

    return Cocycle3.from_function(trivial_quandle(3), f)


def theta_z(n: int = 3) -> Cocycle3:
    """t^{(x-y)(y-z)(z-x)z} on T_3."""
    return _theta_closed_form(n, last=True)


def theta_x(n: int = 3) -> Cocycle3:
    """t^{(x-y)(y-z)(z-x)x} on T_3."""
    return _theta_closed_form(n, last=False)


def zero_cocycle(q: Quandle) -> Cocycle3:
    return Cocycle3.from_function(q, lambda x, y, z: 0)


BUILTIN_COCYCLES = {"theta_z": theta_z, "theta_x": theta_x}


def cocycle_from_dict(data: Mapping) -> Cocycle3:
    if "builtin" in data:
        name = data["builtin"]
        if name == "zero":
            return zero_cocycle(trivial_quandle(3))
        if name not in BUILTIN_COCYCLES:
            raise ValueError(f"unknown builtin cocycle {name!r}")
        return BUILTIN_COCYCLES[name]()
    return Cocycle3(Quandle.from_dict(data["quandle"]), data["exponents"])


def validate_cocycle(c: Cocycle3) -> list[str]:
    """Check (theta1) on X^3 and the 3-cocycle identity on X^4, additively.

    The multiplicative identity
    th(x,z,w) th(x,y,w)^-1 th(x,y,z) = th(x*y,z,w) th(x*z,y*z,w)^-1 th(x*w,y*w,z*w)
    becomes an equation between signed sums of exponents.
    """
    q = c.quandle
    X = range(q.size)
    problems = []
    for x, y, z in itertools.product(X, repeat=3):
        if (x == y or y == z) and c(x, y, z) != 0:
            problems.append(f"(theta1) at {(x, y, z)}: exponent {c(x, y, z)}")
    o = q.op
    for x, y, z, w in itertools.product(X, repeat=4):
        lhs = c(x, z, w) - c(x, y, w) + c(x, y, z)
        rhs = c(o(x, y), z, w) - c(o(x, z), o(y, z), w) + c(o(x, w), o(y, w), o(z, w))
        if lhs != rhs:
            problems.append(f"(theta2) at {(x, y, z, w)}: {lhs} != {rhs}")
    return problems


class LaurentPoly:
    """Element of Z[t, t^-1] stored as {exponent: coefficient} with no zeros."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def evaluate(self, t=1):
        return sum(c * t ** e for e, c in self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self._terms!r})"

    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self._terms.items())}


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")
