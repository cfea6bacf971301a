"""The free nonunitary Rota-Baxter algebra on a base algebra.

Elements are finite formal sums of bracketed words with exact rational
coefficients.  The product recurses on the boundary factors of the two
words: letters multiply in the base algebra, a letter next to a bracket
concatenates, and two brackets expand by the Rota-Baxter relation

    [a] [b] = [[a] b] + [a [b]] + weight * [a b].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

from .base import BaseAlgebra, BaseElement, free_monoid, zero_product
from .words import Bracket, Letter, Word, bracket, letter

Scalar = Union[int, Fraction]


class ContextMismatch(ValueError):
    pass


class RecursionGuardError(RuntimeError):
    """The product recursed deeper than the configured guard allows."""


class MorphismError(ValueError):
    """The letter map is not multiplicative, or weights disagree."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


_PRODUCT_CACHE_LIMIT = 500_000


@dataclass(eq=False)
class Context:
    """Base algebra plus weight.  Caches word products, so share one context
    per session rather than rebuilding it."""

    base: BaseAlgebra
    weight: Fraction = Fraction(0)
    alphabet: tuple[str, ...] | None = None
    max_depth_sum: int = 64
    _cache: dict = field(default_factory=dict, repr=False)
    _products: dict = field(default_factory=dict, repr=False)
    _letters: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.weight = Fraction(self.weight)
        self._w = scalar(self.weight)
        if self.alphabet is not None:
            self.alphabet = tuple(self.alphabet)

    def same_as(self, other: Context) -> bool:
        return self is other or (self.base == other.base and self.weight == other.weight)

    # -- constructors -------------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def word(self, w: Word, coeff: Scalar = 1) -> Element:
        self.check_word(w)
        return Element(self, {w: Fraction(coeff)})

    def gen(self, *parts: str) -> Element:
        return self.word(letter(*parts))

    def embed(self, b: BaseElement | Letter) -> Element:
        """The natural injection of the base algebra."""
        if isinstance(b, Letter):
            b = ((Fraction(1), b),)
        acc: dict[Word, Fraction] = {}
        for c, z in b:
            self.base.check_letter(z)
            w = Word((z,))
            acc[w] = acc.get(w, 0) + Fraction(c)
        return Element(self, acc)

    def check_word(self, w: Word) -> None:
        for f in w.factors:
            if f.is_letter:
                self.base.check_letter(f)
                if self.alphabet is not None:
                    for g in f.parts:
                        if g not in self.alphabet:
                            raise ValueError(f"unknown generator {g!r}")
            else:
                self.check_word(f.word)

    # -- algebra structure --------------------------------------------------

    def mul(self, a: Element, b: Element) -> Element:
        return product(self, a, b)

    def rb(self, a: Element) -> Element:
        return rb_apply(a)

    def word_product(self, u: Word, v: Word) -> dict[Word, Fraction]:
        """Product of two basis words; the result must not be mutated."""
        last, first = u.factors[-1], v.factors[0]
        if last.is_letter != first.is_letter:
            return {Word._trusted(u.factors + v.factors): 1}
        key = (u, v)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        prefix, suffix = u.factors[:-1], v.factors[1:]
        if last.is_letter:
            middle = self._letter_product(last, first)
        else:
            middle = [(c, Bracket(w)) for w, c in self._bracket_product(last.word, first.word).items()]
        out: dict[Word, Fraction] = {}
        for c, z in middle:
            w = Word._trusted(prefix + (z,) + suffix)
            out[w] = out.get(w, 0) + c
        if len(self._products) >= _PRODUCT_CACHE_LIMIT:
            self._products.clear()
        self._products[key] = out
        return out

    def _letter_product(self, a: Letter, b: Letter) -> list:
        key = (a, b)
        hit = self._letters.get(key)
        if hit is None:
            hit = [(scalar(c), z) for c, z in self.base.mult_letters(a, b)]
            self._letters[key] = hit
        return hit

    def _bracket_product(self, a: Word, b: Word) -> dict[Word, Fraction]:
        """Inner part of [a] [b]: the sum [a] b + a [b] + weight * a b."""
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if a.depth + b.depth + 2 > self.max_depth_sum:
            raise RecursionGuardError(f"depth sum {a.depth + b.depth + 2} exceeds guard {self.max_depth_sum}")
        acc: dict[Word, Fraction] = {}
        _accumulate(acc, self.word_product(bracket(a), b), 1)
        _accumulate(acc, self.word_product(a, bracket(b)), 1)
        if self._w:
            _accumulate(acc, self.word_product(a, b), self._w)
        acc = {w: c for w, c in acc.items() if c}
        self._cache[key] = acc
        return acc


def scalar(c) -> Scalar:
    """Normalize a coefficient: integral values become ints (which compare
    and hash equal to the matching Fraction), the rest Fractions."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _accumulate(acc: dict, terms: Mapping[Word, Fraction], scale) -> None:
    for w, c in terms.items():
        acc[w] = acc.get(w, 0) + scale * c


def context(base: str | BaseAlgebra = "zero", weight: Scalar = 0, alphabet=None) -> Context:
    if isinstance(base, str):
        base = {"zero": zero_product, "tensor": free_monoid, "free_monoid": free_monoid}[base]()
    return Context(base, Fraction(weight), alphabet)


class Element:
    """A finite linear combination of words, tied to a :class:`Context`."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: Context, terms: Mapping[Word, Scalar]):
        self.ctx = ctx
        self._terms = {w: scalar(c) for w, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ctx: Context, terms: dict) -> Element:
        e = object.__new__(cls)
        e.ctx = ctx
        e._terms = {w: c for w, c in terms.items() if c}
        e._hash = None
        return e

    # -- container protocol ---------------------------------------------------

    def terms(self) -> list[tuple[Word, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, w: Word) -> Scalar:
        return self._terms.get(w, 0)

    def words(self) -> list[Word]:
        return [w for w, _ in self.terms()]

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if not self.ctx.same_as(other.ctx):
            raise ContextMismatch("elements belong to different contexts")

    def __add__(self, other: Element) -> Element:
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return Element._raw(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element._raw(self.ctx, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Element) -> Element:
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) - c
        return Element._raw(self.ctx, acc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return product(self.ctx, self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx.same_as(other.ctx) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"Element({render_element(self)!r})"


def render_element(a: Element) -> str:
    if not a._terms:
        return "0"
    parts = []
    for i, (w, c) in enumerate(a.terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(w) if mag == 1 else f"{mag}*{w}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(c: Scalar, a: Element) -> Element:
    c = scalar(c)
    if c == 0:
        return Element(a.ctx, {})
    return Element._raw(a.ctx, {w: c * v for w, v in a._terms.items()})


def product(ctx: Context, a: Element, b: Element) -> Element:
    """Bilinear extension of the word product."""
    for e in (a, b):
        if not ctx.same_as(e.ctx):
            raise ContextMismatch("element is not over this context")
    acc: dict[Word, Fraction] = {}
    for u, cu in a._terms.items():
        for v, cv in b._terms.items():
            _accumulate(acc, ctx.word_product(u, v), cu * cv)
    return Element._raw(ctx, acc)


def rb_apply(a: Element) -> Element:
    """The Rota-Baxter operator: wrap every word in one bracket."""
    return Element._raw(a.ctx, {bracket(w): c for w, c in a._terms.items()})


def embed_letter(ctx: Context, z: Letter | BaseElement) -> Element:
    return ctx.embed(z)


# ---------------------------------------------------------------- morphisms


class RBAlgebra:
    """Structural type of a Rota-Baxter algebra used as a morphism target:
    ``weight``, ``mul(a, b)``, ``rb(a)``, ``zero()``.  Elements must support
    ``+``, ``-`` and multiplication by rationals."""

    weight: Fraction

    def mul(self, a, b):  # pragma: no cover - protocol
        raise NotImplementedError

    def rb(self, a):  # pragma: no cover - protocol
        raise NotImplementedError

    def zero(self):  # pragma: no cover - protocol
        raise NotImplementedError


LetterMap = Union[Mapping, Callable]


def _letter_image(f: LetterMap, target, z: Letter):
    if callable(f) and not isinstance(f, Mapping):
        return f(z)
    if z in f:
        return f[z]
    if len(z.parts) == 1 and z.parts[0] in f:
        return f[z.parts[0]]
    if len(z.parts) > 1 and all(g in f for g in z.parts):
        out = f[z.parts[0]]
        for g in z.parts[1:]:
            out = target.mul(out, f[g])
        return out
    raise KeyError(f"letter map has no image for {z}")


def _base_image(f, target, b: BaseElement):
    out = target.zero()
    for c, z in b:
        out = out + c * _letter_image(f, target, z)
    return out


def validate_letter_map(ctx: Context, f: LetterMap, target, letters: Iterable[Letter], extra_pairs=()) -> int:
    """Check f(a*b) = f(a)f(b) on all pairs of the given letters and on any
    extra (BaseElement, BaseElement) pairs.  Returns the number of checks."""
    letters = list(letters)
    n = 0
    pairs = [(((Fraction(1), a),), ((Fraction(1), b),)) for a, b in itertools.product(letters, repeat=2)]
    for x, y in itertools.chain(pairs, extra_pairs):
        lhs = _base_image(f, target, ctx.base.mult(x, y))
        rhs = target.mul(_base_image(f, target, x), _base_image(f, target, y))
        n += 1
        if lhs != rhs:
            raise MorphismError(f"letter map is not multiplicative on ({_fmt(x)}, {_fmt(y)})", witness=(x, y, lhs, rhs))
    return n


def _fmt(b: BaseElement) -> str:
    return " + ".join(f"{c}*{z}" for c, z in b) or "0"


class Morphism:
    """The unique Rota-Baxter morphism extending a letter map ``f`` into
    ``target``.

    Words evaluate factor by factor: a letter goes to its image under f, a
    bracket to R of the image of its content, and the factors multiply in
    the target.
    """

    def __init__(self, ctx: Context, f: LetterMap, target, validate_on: Iterable[Letter] | None = None, extra_pairs=()):
        if Fraction(target.weight) != ctx.weight:
            raise MorphismError(f"weight mismatch: context {ctx.weight}, target {target.weight}")
        self.ctx = ctx
        self.f = f
        self.target = target
        if validate_on is None and isinstance(f, Mapping):
            validate_on = [k if isinstance(k, Letter) else Letter((k,)) for k in f]
        if validate_on is not None:
            validate_letter_map(ctx, f, target, validate_on, extra_pairs)
        self._memo: dict[Word, object] = {}

    def word(self, w: Word):
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        out = None
        for fac in w.factors:
            if fac.is_letter:
                img = _letter_image(self.f, self.target, fac)
            else:
                img = self.target.rb(self.word(fac.word))
            out = img if out is None else self.target.mul(out, img)
        self._memo[w] = out
        return out

    def __call__(self, a: Element):
        out = self.target.zero()
        for w, c in a._terms.items():
            out = out + c * self.word(w)
        return out


def eval_morphism(ctx: Context, f: LetterMap, target, a: Element, validate: bool = True):
    m = Morphism(ctx, f, target) if validate else Morphism(ctx, f, target, validate_on=())
    return m(a)
