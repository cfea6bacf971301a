"""Seeded random words and elements for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .free import Context, Element
from .words import Bracket, Letter, Word

DEFAULT_ALPHABET = ("x", "y", "z")


def make_rng(seed: int | None) -> random.Random:
    return random.Random(0 if seed is None else seed)


def random_letter(rng: random.Random, alphabet: Sequence[str], free_monoid: bool = False, max_len: int = 2) -> Letter:
    n = rng.randint(1, max_len) if free_monoid else 1
    return Letter(tuple(rng.choice(alphabet) for _ in range(n)))


def random_word(
    rng: random.Random,
    alphabet: Sequence[str] = DEFAULT_ALPHABET,
    max_depth: int = 3,
    max_breadth: int = 3,
    free_monoid: bool = False,
) -> Word:
    """A random word of depth <= max_depth whose standard decomposition
    (at every level) has at most ``max_breadth`` factors."""
    breadth = rng.randint(1, max_breadth)
    if max_depth == 0:
        return Word((random_letter(rng, alphabet, free_monoid),))
    is_letter = rng.random() < 0.5
    factors = []
    for _ in range(breadth):
        if is_letter:
            factors.append(random_letter(rng, alphabet, free_monoid))
        else:
            inner_depth = rng.randint(0, max_depth - 1)
            factors.append(Bracket(random_word(rng, alphabet, inner_depth, max_breadth, free_monoid)))
        is_letter = not is_letter
    return Word(tuple(factors))


def random_bracket_word(rng: random.Random, alphabet=DEFAULT_ALPHABET, max_depth=3, max_breadth=3, free_monoid=False) -> Word:
    """A word ``[w]`` with ``w`` random of depth < max_depth."""
    inner = random_word(rng, alphabet, max_depth - 1, max_breadth, free_monoid)
    return Word((Bracket(inner),))


def random_element(
    ctx: Context,
    rng: random.Random,
    terms: int = 2,
    max_depth: int = 2,
    max_breadth: int = 2,
    denominators: Sequence[int] = (1, 1, 2),
) -> Element:
    """A linear combination of up to ``terms`` random words with small
    rational coefficients whose denominators are drawn from ``denominators``."""
    fm = ctx.base.kind == "free_monoid"
    alphabet = ctx.alphabet or DEFAULT_ALPHABET
    acc: dict = {}
    for _ in range(rng.randint(1, terms)):
        w = random_word(rng, alphabet, max_depth, max_breadth, fm)
        c = Fraction(rng.choice((-2, -1, 1, 2, 3)), rng.choice(denominators))
        acc[w] = acc.get(w, 0) + c
    return Element(ctx, acc)
