"""Concrete Rota-Baxter algebras with exact arithmetic.

``SequenceOracle``: length-N rational sequences under the pointwise
product, with ``R(f)(n) = weight * sum(f(k) for k < n)``.

``PolynomialOracle``: rational polynomials with ``R`` the antiderivative
vanishing at 0 (weight 0).  With ``max_degree`` set the carrier is the
quotient by ``t**(max_degree+1)``, which ``R`` preserves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class OracleError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ExactVector:
    """Immutable tuple of Fractions with the vector-space operations."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable):
        self.c = tuple(Fraction(x) for x in coeffs)

    def _like(self, coeffs):
        return type(self)(coeffs)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self._like(a + b for a, b in _zip_pad(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        return self._like(a - b for a, b in _zip_pad(self.c, other.c))

    def __neg__(self):
        return self._like(-a for a in self.c)

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self._like(k * a for a in self.c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not any(self.c)
        if type(other) is not type(self):
            return NotImplemented
        return _strip(self.c) == _strip(other.c)

    def __hash__(self):
        return hash(_strip(self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i]


def _zip_pad(a, b):
    n = max(len(a), len(b))
    zero = Fraction(0)
    return zip(a + (zero,) * (n - len(a)), b + (zero,) * (n - len(b)))


def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Seq(ExactVector):
    __slots__ = ()

    def __str__(self):
        return "(" + ", ".join(map(str, self.c)) + ")"

    def __repr__(self):
        return f"Seq{self}"


class Poly(ExactVector):
    """Polynomial in ``t``; ``c[i]`` is the coefficient of ``t**i``."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable):
        super().__init__(_strip(Fraction(x) for x in coeffs))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __str__(self):
        if not self.c:
            return "0"
        out = []
        for i, a in enumerate(self.c):
            if a:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coeff = str(a) if (a != 1 or i == 0) else ""
                out.append(f"{coeff}*{mono}" if coeff and mono else (coeff or mono))
        return " + ".join(out)

    def __repr__(self):
        return f"Poly({self})"


@dataclass(eq=False)
class SequenceOracle:
    length: int = 6
    weight: Fraction = Fraction(1)
    kind = "truncated_sequences"

    def __post_init__(self):
        self.weight = Fraction(self.weight)
        if self.length < 1:
            raise ValueError("length must be positive")

    def element(self, values: Sequence) -> Seq:
        if len(values) != self.length:
            raise OracleError(f"expected {self.length} entries, got {len(values)}")
        return Seq(values)

    def zero(self) -> Seq:
        return Seq([0] * self.length)

    def mul(self, a: Seq, b: Seq) -> Seq:
        return Seq(x * y for x, y in zip(a.c, b.c))

    def rb(self, a: Seq) -> Seq:
        out, run = [], Fraction(0)
        for x in a.c:
            out.append(self.weight * run)
            run += x
        return Seq(out)

    def basis(self) -> list[Seq]:
        return [Seq([1 if i == j else 0 for j in range(self.length)]) for i in range(self.length)]

    def coordinates(self, a: Seq) -> tuple[Fraction, ...]:
        return a.c

    def random_element(self, rng: random.Random, lo: int = -3, hi: int = 3) -> Seq:
        return Seq(rng.randint(lo, hi) for _ in range(self.length))

    def describe(self) -> str:
        return f"truncated_sequences(N={self.length}, weight={self.weight})"


@dataclass(eq=False)
class PolynomialOracle:
    max_degree: int | None = None
    kind = "polynomial_integration"

    weight = Fraction(0)

    def _trunc(self, c):
        if self.max_degree is None:
            return Poly(c)
        return Poly(list(c)[: self.max_degree + 1])

    def element(self, coeffs: Sequence) -> Poly:
        return self._trunc(coeffs)

    def zero(self) -> Poly:
        return Poly([])

    def mul(self, a: Poly, b: Poly) -> Poly:
        if not a.c or not b.c:
            return Poly([])
        top = len(a.c) + len(b.c) - 1
        if self.max_degree is not None:
            top = min(top, self.max_degree + 1)
        out = [Fraction(0)] * top
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if i + j >= top:
                    break
                out[i + j] += x * y
        return Poly(out)

    def rb(self, a: Poly) -> Poly:
        return self._trunc([Fraction(0)] + [x / (i + 1) for i, x in enumerate(a.c)])

    def basis(self) -> list[Poly]:
        if self.max_degree is None:
            raise OracleError("untruncated polynomial oracle has no finite basis")
        return [Poly([0] * i + [1]) for i in range(self.max_degree + 1)]

    def coordinates(self, a: Poly) -> tuple[Fraction, ...]:
        n = self.max_degree + 1
        return tuple(a.c) + (Fraction(0),) * (n - len(a.c))

    def random_element(self, rng: random.Random, lo: int = -3, hi: int = 3, degree: int = 3) -> Poly:
        d = degree if self.max_degree is None else min(degree, self.max_degree)
        return self._trunc(Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(d + 1))

    def describe(self) -> str:
        trunc = "" if self.max_degree is None else f", mod t^{self.max_degree + 1}"
        return f"polynomial_integration(weight=0{trunc})"


def check_rb_oracle(o, samples: int, rng: random.Random | None = None) -> dict:
    """Verify the Rota-Baxter identity, bilinearity and associativity of the
    carrier product on random samples.  Raises :class:`OracleError` with
    the witness on the first violation."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = rng or random.Random(0)
    lam = o.weight
    for _ in range(samples):
        x, y, z = (o.random_element(rng) for _ in range(3))
        k = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        lhs = o.mul(o.rb(x), o.rb(y))
        rhs = o.rb(o.mul(o.rb(x), y) + o.mul(x, o.rb(y)) + lam * o.mul(x, y))
        if lhs != rhs:
            raise OracleError("Rota-Baxter identity fails", witness=(x, y))
        if o.mul(o.mul(x, y), z) != o.mul(x, o.mul(y, z)):
            raise OracleError("carrier product is not associative", witness=(x, y, z))
        if o.mul(x + k * y, z) != o.mul(x, z) + k * o.mul(y, z):
            raise OracleError("carrier product is not bilinear", witness=(x, y, z))
        if o.rb(x + k * y) != o.rb(x) + k * o.rb(y):
            raise OracleError("operator is not linear", witness=(x, y))
    return {"oracle": o.describe(), "samples": samples, "pass": True}
