"""Rota-Baxter bracketed words.

A word is an alternating sequence of *letters* (basis elements of the base
algebra) and *brackets* (a word wrapped by one application of the operator).
The brackets are written ``[`` and ``]``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union


class WordError(ValueError):
    """Raised for malformed words (alternation violations, bad letters)."""


class EnumerationLimitError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


@dataclass(frozen=True, slots=True)
class Letter:
    """A basis element of the base algebra: one generator, or a tensor
    monomial ``x.y.z`` under the free-monoid base."""

    parts: tuple[str, ...]

    def __post_init__(self):
        if not self.parts:
            raise WordError("a letter needs at least one generator")

    is_letter = True

    def __str__(self) -> str:
        return ".".join(self.parts)


@dataclass(frozen=True, slots=True)
class Bracket:
    word: Word

    is_letter = False

    def __str__(self) -> str:
        return f"[{self.word}]"


Factor = Union[Letter, Bracket]


@dataclass(frozen=True)
class WordStats:
    head: int
    tail: int
    breadth: int
    depth: int


_INTERN: dict = {}
_INTERN_LIMIT = 1_000_000


@dataclass(frozen=True, eq=False)
class Word:
    """An element of the basis X_inf.  Immutable; hash and statistics are
    computed once at construction."""

    factors: tuple[Factor, ...]
    _hash: int = field(init=False, repr=False, compare=False)
    depth: int = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise WordError("empty word")
        depth = 0
        size = 0
        prev = None
        for f in factors:
            if not isinstance(f, (Letter, Bracket)):
                raise WordError(f"not a factor: {f!r}")
            kind = f.is_letter
            if prev is not None and prev == kind:
                what = "letters" if kind else "brackets"
                raise WordError(f"two adjacent {what} in word")
            prev = kind
            if kind:
                size += len(f.parts)
            else:
                depth = max(depth, f.word.depth + 1)
                size += f.word.size
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "_hash", hash(factors))

    @classmethod
    def _trusted(cls, factors: tuple) -> Word:
        """Build from factors already known to alternate (product internals).

        Results are interned, so equal words built this way are usually the
        same object and dict lookups short-circuit on identity.
        """
        hit = _INTERN.get(factors)
        if hit is not None:
            return hit
        w = object.__new__(cls)
        depth = size = 0
        for f in factors:
            if f.is_letter:
                size += len(f.parts)
            else:
                inner = f.word
                if inner.depth >= depth:
                    depth = inner.depth + 1
                size += inner.size
        d = w.__dict__
        d["factors"] = factors
        d["depth"] = depth
        d["size"] = size
        d["_hash"] = hash(factors)
        if len(_INTERN) >= _INTERN_LIMIT:
            _INTERN.clear()
        _INTERN[factors] = w
        return w

    @property
    def _text(self) -> str:
        t = self.__dict__.get("_str")
        if t is None:
            t = " ".join(map(str, self.factors))
            self.__dict__["_str"] = t
        return t

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Word):
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"Word({self._text!r})"

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    @property
    def head(self) -> int:
        return 0 if self.factors[0].is_letter else 1

    @property
    def tail(self) -> int:
        return 0 if self.factors[-1].is_letter else 1

    @property
    def breadth(self) -> int:
        return len(self.factors)

    @property
    def is_bracket(self) -> bool:
        """True when the word lies in ``[X_inf]`` (breadth one, bracketed)."""
        return len(self.factors) == 1 and not self.factors[0].is_letter

    @property
    def inner(self) -> Word:
        if not self.is_bracket:
            raise WordError(f"{self} is not a bracketed word")
        return self.factors[0].word

    def sort_key(self) -> tuple:
        return (self.size, self.depth, self._text)

    def __lt__(self, other: Word) -> bool:
        return self.sort_key() < other.sort_key()


def letter(*parts: str) -> Word:
    return Word((Letter(tuple(parts)),))


def bracket(w: Word) -> Word:
    return Word._trusted((Bracket(w),))


def concat(*words: Word) -> Word:
    """Concatenate words; raises WordError on an alternation violation."""
    factors: list[Factor] = []
    for w in words:
        factors.extend(w.factors)
    return Word(tuple(factors))


def can_concat(a: Word, b: Word) -> bool:
    return a.tail != b.head


def word_stats(w: Word) -> WordStats:
    return WordStats(w.head, w.tail, w.breadth, w.depth)


def standard_decomposition(w: Word) -> tuple[Word, ...]:
    """Split ``w`` into its breadth-one factors, each returned as a word."""
    return tuple(Word((f,)) for f in w.factors)


def shape_class(w: Word) -> str:
    """Which of the four disjoint shapes of the alternating product ``w`` has.

    ``"(XB)^r"``, ``"(XB)^r X"``, ``"(BX)^r"`` or ``"(BX)^r B"`` where B is a
    bracketed factor.
    """
    h, t = w.head, w.tail
    return {
        (0, 1): "(XB)^r",
        (0, 0): "(XB)^r X",
        (1, 0): "(BX)^r",
        (1, 1): "(BX)^r B",
    }[(h, t)]


def compare_words(a: Word, b: Word, alphabet: Sequence[str] | None = None) -> int:
    """Three-way comparison by (generator count, depth, rendered text).

    With an ``alphabet`` the text comparison ranks generators by declaration
    order instead of by their spelling.
    """
    if alphabet is None:
        ka, kb = a.sort_key(), b.sort_key()
    else:
        rank = {g: i for i, g in enumerate(alphabet)}
        ka = (a.size, a.depth, _ranked_tokens(a, rank))
        kb = (b.size, b.depth, _ranked_tokens(b, rank))
    return (ka > kb) - (ka < kb)


def _ranked_tokens(w: Word, rank: dict[str, int]) -> tuple:
    # brackets and separators sort before generators, as '[' , ' ', '.' do in ASCII
    out: list[tuple[int, int]] = []
    for i, f in enumerate(w.factors):
        if i:
            out.append((0, 1))
        if f.is_letter:
            for j, g in enumerate(f.parts):
                if j:
                    out.append((0, 2))
                out.append((1, rank[g]))
        else:
            out.append((0, 3))
            out.extend(_ranked_tokens(f.word, rank))
            out.append((0, 4))
    return tuple(out)


def generators(w: Word) -> Iterator[str]:
    for f in w.factors:
        if f.is_letter:
            yield from f.parts
        else:
            yield from generators(f.word)


def subwords(w: Word) -> Iterator[Word]:
    """Yield ``w`` and every word sitting inside one of its brackets."""
    yield w
    for f in w.factors:
        if not f.is_letter:
            yield from subwords(f.word)


# ---------------------------------------------------------------- enumeration


def _letters(alphabet: Sequence[str], n: int, free_monoid: bool) -> list[Letter]:
    if n == 1:
        return [Letter((g,)) for g in alphabet]
    if not free_monoid:
        return []
    out = []
    for prefix in _letters(alphabet, n - 1, True):
        for g in alphabet:
            out.append(Letter(prefix.parts + (g,)))
    return out


def enumerate_words(
    alphabet: Sequence[str],
    max_letters: int,
    max_depth: int,
    free_monoid: bool = False,
    cap: int = 1_000_000,
) -> list[Word]:
    """All words of depth <= ``max_depth`` using at most ``max_letters``
    generator occurrences, each once, in canonical order."""
    if max_letters < 1 or max_depth < 0:
        raise ValueError("need max_letters >= 1 and max_depth >= 0")
    alphabet = tuple(alphabet)
    out: list[Word] = []
    for n in range(1, max_letters + 1):
        out.extend(_words_exact(alphabet, n, max_depth, free_monoid, cap))
        if len(out) > cap:
            raise EnumerationLimitError(f"more than {cap} words")
    out.sort(key=Word.sort_key)
    return out


def words_of_size(
    alphabet: Sequence[str], n: int, max_depth: int, free_monoid: bool = False, cap: int = 1_000_000
) -> list[Word]:
    """Words with exactly ``n`` generator occurrences and depth <= ``max_depth``."""
    ws = list(_words_exact(tuple(alphabet), n, max_depth, free_monoid, cap))
    ws.sort(key=Word.sort_key)
    return ws


@functools.lru_cache(maxsize=None)
def _words_exact(alphabet, n, max_depth, free_monoid, cap) -> tuple[Word, ...]:
    # sequences of alternating factors, split by the kind of the first factor
    out = []
    for first_is_letter in (True, False):
        for factors in _factor_seqs(alphabet, n, max_depth, free_monoid, first_is_letter, cap):
            out.append(Word(factors))
            if len(out) > cap:
                raise EnumerationLimitError(f"more than {cap} words")
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _factor_seqs(alphabet, n, max_depth, free_monoid, letter_first, cap) -> tuple[tuple[Factor, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n + 1):
        if letter_first:
            heads: list[Factor] = list(_letters(alphabet, k, free_monoid))
        elif max_depth == 0:
            heads = []
        else:
            heads = [Bracket(w) for w in _words_exact(alphabet, k, max_depth - 1, free_monoid, cap)]
        if not heads:
            continue
        rests = _factor_seqs(alphabet, n - k, max_depth, free_monoid, not letter_first, cap)
        for h in heads:
            for rest in rests:
                out.append((h,) + rest)
                if len(out) > cap:
                    raise EnumerationLimitError(f"more than {cap} words")
    return tuple(out)

