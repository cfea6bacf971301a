"""Decorated planar trees and their embeddings into free Rota-Baxter algebras.

Binary trees with decorated internal vertices form a basis of the free
dendriform dialgebra; planar trees whose vertices of valence k+1 carry k
decorations form a basis of the free dendriform trialgebra.  ``phi`` sends
binary trees to words over the zero-product base (weight 0) and ``psi``
sends planar trees to words over the free-monoid base (weight 1).

Both families share one representation: a :class:`Tree` with a tuple of
children and a tuple of labels (one fewer than children).  The leaf has
neither.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .dendriform import DOT, PREC, STAR, SUCC
from .words import Bracket, Letter, Word

BINARY, PLANAR = "binary", "planar"


class TreeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Tree:
    children: tuple[Tree, ...] = ()
    labels: tuple[str, ...] = ()
    _hash: int = field(init=False, repr=False)
    leaves: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.children or self.labels:
            if len(self.children) != len(self.labels) + 1:
                raise TreeError("a vertex with k labels needs k+1 children")
            if len(self.children) < 2:
                raise TreeError("internal vertices need at least two children")
        object.__setattr__(self, "_hash", hash((self.children, self.labels)))
        object.__setattr__(self, "leaves", sum(c.leaves for c in self.children) if self.children else 1)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.labels == other.labels and self.children == other.children

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_binary(self) -> bool:
        return self.is_leaf or (len(self.children) == 2 and all(c.is_binary for c in self.children))

    @property
    def degree(self) -> int:
        """Number of leaves minus one (= number of decorations)."""
        return self.leaves - 1

    @property
    def left(self) -> Tree:
        return self.children[0]

    @property
    def right(self) -> Tree:
        return self.children[-1]

    def sort_key(self) -> tuple:
        return (self.leaves, render_planar(self))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return render_planar(self)

    def __repr__(self):
        return f"Tree({render_planar(self)!r})"


LEAF = Tree()


def graft_binary(left: Tree, x: str, right: Tree) -> Tree:
    return Tree((left, right), (x,))


def graft_planar(children: Sequence[Tree], labels: Sequence[str]) -> Tree:
    if len(children) != len(labels) + 1 or len(children) < 2:
        raise TreeError(f"cannot graft {len(children)} trees over {len(labels)} labels")
    return Tree(tuple(children), tuple(labels))


def ungraft(t: Tree) -> tuple[tuple[Tree, ...], tuple[str, ...]]:
    if t.is_leaf:
        raise TreeError("the leaf is not a grafting")
    return t.children, t.labels


# ------------------------------------------------------------ tree elements


class TreeElement:
    """A finite linear combination of trees of one family."""

    __slots__ = ("family", "_terms")

    def __init__(self, family: str, terms: Mapping[Tree, object] | None = None):
        if family not in (BINARY, PLANAR):
            raise TreeError(f"unknown family {family!r}")
        self.family = family
        self._terms = {t: Fraction(c) for t, c in (terms or {}).items() if c != 0}

    @classmethod
    def of(cls, family: str, t: Tree, c=1) -> TreeElement:
        return cls(family, {t: c})

    def terms(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def has_leaf(self) -> bool:
        return LEAF in self._terms

    def __add__(self, other: TreeElement) -> TreeElement:
        acc = dict(self._terms)
        for t, c in other._terms.items():
            acc[t] = acc.get(t, 0) + c
        return TreeElement(self.family, acc)

    def __neg__(self):
        return TreeElement(self.family, {t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return TreeElement(self.family, {t: k * c for t, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TreeElement):
            return NotImplemented
        return self.family == other.family and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        render = render_binary if self.family == BINARY else render_planar
        out = []
        for i, (t, c) in enumerate(self.terms()):
            body = render(t) if abs(c) == 1 else f"{abs(c)}*{render(t)}"
            out.append(("-" if c < 0 else "") + body if i == 0 else ("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    __repr__ = __str__


# Basis-level operations return dict[Tree, Fraction].  The leaf acts as the
# unit of star, which folds the leaf cases of the recursions into one rule.


def _add_into(acc: dict, terms: Mapping, k=1) -> None:
    for t, c in terms.items():
        acc[t] = acc.get(t, 0) + k * c


def _clean(acc: dict) -> dict:
    return {t: c for t, c in acc.items() if c}


def _replace_child(t: Tree, i: int, terms: Mapping[Tree, Fraction]) -> dict:
    out: dict = {}
    for s, c in terms.items():
        kids = t.children[:i] + (s,) + t.children[i + 1 :]
        out[Tree(kids, t.labels)] = out.get(Tree(kids, t.labels), 0) + c
    return out


@functools.lru_cache(maxsize=None)
def _binary_op(kind: str, t: Tree, u: Tree) -> dict:
    if kind == STAR:
        if t.is_leaf:
            return {u: Fraction(1)}
        if u.is_leaf:
            return {t: Fraction(1)}
        acc: dict = {}
        _add_into(acc, _binary_op(PREC, t, u))
        _add_into(acc, _binary_op(SUCC, t, u))
        return _clean(acc)
    if t.is_leaf or u.is_leaf:
        raise TreeError("prec/succ are not defined on the leaf")
    if kind == PREC:
        return _replace_child(t, 1, _binary_op(STAR, t.right, u))
    if kind == SUCC:
        return _replace_child(u, 0, _binary_op(STAR, t, u.left))
    raise TreeError(f"{kind!r} is not an operation on binary trees")


@functools.lru_cache(maxsize=None)
def _planar_op(kind: str, t: Tree, u: Tree) -> dict:
    if kind == STAR:
        if t.is_leaf:
            return {u: Fraction(1)}
        if u.is_leaf:
            return {t: Fraction(1)}
        acc: dict = {}
        for k in (PREC, SUCC, DOT):
            _add_into(acc, _planar_op(k, t, u))
        return _clean(acc)
    if t.is_leaf or u.is_leaf:
        raise TreeError(f"{kind} is not defined on the leaf")
    if kind == PREC:
        return _replace_child(t, len(t.children) - 1, _planar_op(STAR, t.right, u))
    if kind == SUCC:
        return _replace_child(u, 0, _planar_op(STAR, t, u.left))
    if kind == DOT:
        out: dict = {}
        for mid, c in _planar_op(STAR, t.right, u.left).items():
            kids = t.children[:-1] + (mid,) + u.children[1:]
            s = Tree(kids, t.labels + u.labels)
            out[s] = out.get(s, 0) + c
        return out
    raise TreeError(f"unknown operation {kind!r}")


def tree_dendriform(family: str, kind: str, S: TreeElement, T: TreeElement) -> TreeElement:
    """Bilinear dendriform operation on tree elements of one family."""
    if family == BINARY and kind == DOT:
        raise TreeError("dot is only defined on planar trees")
    for e in (S, T):
        if e.family != family:
            raise TreeError("family mismatch")
        if e.has_leaf() and kind != STAR:
            raise TreeError("the leaf tree is not an element of the free algebra")
    op = _binary_op if family == BINARY else _planar_op
    acc: dict = {}
    for s, cs in S._terms.items():
        for t, ct in T._terms.items():
            _add_into(acc, op(kind, s, t), cs * ct)
    return TreeElement(family, acc)


# ------------------------------------------------------------- embeddings


def phi(t: Tree) -> Word:
    """Embed a decorated binary tree as a diword."""
    if t.is_leaf:
        raise TreeError("the leaf tree has no image")
    if not t.is_binary:
        raise TreeError("phi takes binary trees")
    factors: list = []
    if not t.left.is_leaf:
        factors.append(Bracket(phi(t.left)))
    factors.append(Letter((t.labels[0],)))
    if not t.right.is_leaf:
        factors.append(Bracket(phi(t.right)))
    return Word(tuple(factors))


def psi(t: Tree) -> Word:
    """Embed a valently decorated planar tree as a triword.  A leaf child
    strictly between two labels merges them into one tensor letter."""
    if t.is_leaf:
        raise TreeError("the leaf tree has no image")
    k = len(t.labels)
    factors: list = []
    if not t.children[0].is_leaf:
        factors.append(Bracket(psi(t.children[0])))
    parts: list[str] = []
    for i in range(1, k + 1):
        parts.append(t.labels[i - 1])
        child = t.children[i]
        if child.is_leaf and i < k:
            continue
        factors.append(Letter(tuple(parts)))
        parts = []
        if not child.is_leaf:
            factors.append(Bracket(psi(child)))
    return Word(tuple(factors))


def is_diword(w: Word) -> bool:
    """Exactly one letter per nesting level: ``x``, ``x[d]``, ``[d]x`` or
    ``[d]x[d']`` with d, d' diwords."""
    f = w.factors
    letters = [i for i, x in enumerate(f) if x.is_letter]
    if len(letters) != 1 or len(f) > 3:
        return False
    if any(len(x.parts) != 1 for x in f if x.is_letter):
        return False
    return all(is_diword(x.word) for x in f if not x.is_letter)


def is_diword_by_conditions(w: Word) -> bool:
    """The three syntactic conditions, checked literally at every level."""
    if w.is_bracket:
        return False
    for sub in _all_levels(w):
        fs = sub.factors
        for a in fs:
            if not a.is_letter and a.word.is_bracket:
                return False
        for a, b, c in zip(fs, fs[1:], fs[2:]):
            if a.is_letter and not b.is_letter and c.is_letter:
                return False
    return True


def is_triword(w: Word) -> bool:
    """Not a bracket, and no bracket directly wraps another bracket."""
    if w.is_bracket:
        return False
    return all(is_triword(x.word) for x in w.factors if not x.is_letter)


def _all_levels(w: Word) -> Iterable[Word]:
    yield w
    for x in w.factors:
        if not x.is_letter:
            yield from _all_levels(x.word)


# ------------------------------------------------------------ enumeration


class TreeLimitError(RuntimeError):
    pass


@functools.lru_cache(maxsize=None)
def _binary_shapes(n: int) -> tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        for left in _binary_shapes(k):
            for right in _binary_shapes(n - 1 - k):
                out.append(Tree((left, right), ("*",)))
    return tuple(out)


def _compositions(total: int, min_parts: int) -> Iterable[tuple[int, ...]]:
    for parts in range(min_parts, total + 1):
        for cuts in itertools.combinations(range(1, total), parts - 1):
            bounds = (0,) + cuts + (total,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


@functools.lru_cache(maxsize=None)
def _planar_shapes(leaves: int) -> tuple[Tree, ...]:
    if leaves == 1:
        return (LEAF,)
    out = []
    for comp in _compositions(leaves, 2):
        for kids in itertools.product(*(_planar_shapes(c) for c in comp)):
            out.append(Tree(tuple(kids), ("*",) * (len(kids) - 1)))
    return tuple(out)


def _decorate(shape: Tree, labels: Iterable[str]) -> Tree:
    it = iter(labels)

    def go(t: Tree) -> Tree:
        if t.is_leaf:
            return t
        kids = [go(t.children[0])]
        labs = []
        for c in t.children[1:]:
            labs.append(next(it))
            kids.append(go(c))
        return Tree(tuple(kids), tuple(labs))

    return go(shape)


def enumerate_trees(family: str, n: int, alphabet: Sequence[str] = ("x",), cap: int = 200_000) -> list[Tree]:
    """All trees with ``n + 1`` leaves, every decoration assignment once."""
    if n < 0:
        raise ValueError("n must be >= 0")
    shapes = _binary_shapes(n) if family == BINARY else _planar_shapes(n + 1)
    total = len(shapes) * len(alphabet) ** n
    if total > cap:
        raise TreeLimitError(f"{total} trees exceeds cap {cap}")
    out = [_decorate(s, labels) for s in shapes for labels in itertools.product(alphabet, repeat=n)]
    out.sort(key=Tree.sort_key)
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def super_catalan(n: int) -> int:
    """Planar trees with ``n + 1`` leaves (little Schroeder numbers), from the
    three-term recurrence m*s(m) = 3(2m-3)s(m-1) - (m-3)s(m-2), where m is
    the leaf count and s(1) = s(2) = 1."""
    m = n + 1
    s = {1: 1, 2: 1}
    for k in range(3, m + 1):
        num = 3 * (2 * k - 3) * s[k - 1] - (k - 3) * s[k - 2]
        s[k] = num // k
    return s[m]


# ---------------------------------------------------------------- grammar


def render_binary(t: Tree) -> str:
    if t.is_leaf:
        return "|"
    if not t.is_binary:
        raise TreeError("not a binary tree")
    return f"({render_binary(t.left)} ^{t.labels[0]} {render_binary(t.right)})"


def render_planar(t: Tree) -> str:
    if t.is_leaf:
        return "|"
    parts = [render_planar(t.children[0])]
    for lab, c in zip(t.labels, t.children[1:]):
        parts += [lab, render_planar(c)]
    return "V(" + ", ".join(parts) + ")"


def render_tree(family: str, t: Tree) -> str:
    return render_binary(t) if family == BINARY else render_planar(t)


_TOKEN = re.compile(r"\s*(?:(V\()|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _TreeParser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("V(", "V(", start))
            elif m.group(2):
                self.toks.append(("id", m.group(2), start))
            else:
                self.toks.append((m.group(3), m.group(3), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise TreeError(f"expected {kind!r} at position {tok[2]}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def done(self):
        if self.peek()[0] != "eof":
            tok = self.peek()
            raise TreeError(f"unexpected {tok[1]!r} at position {tok[2]}")

    def binary(self) -> Tree:
        if self.peek()[0] == "|":
            self.i += 1
            return LEAF
        self.take("(")
        left = self.binary()
        self.take("^")
        x = self.take("id")[1]
        right = self.binary()
        self.take(")")
        return Tree((left, right), (x,))

    def planar(self) -> Tree:
        if self.peek()[0] == "|":
            self.i += 1
            return LEAF
        self.take("V(")
        kids = [self.planar()]
        labels = []
        while self.peek()[0] == ",":
            self.i += 1
            labels.append(self.take("id")[1])
            self.take(",")
            kids.append(self.planar())
        self.take(")")
        if not labels:
            raise TreeError("a planar vertex needs at least one label")
        return Tree(tuple(kids), tuple(labels))


def parse_tree(family: str, text: str) -> Tree:
    p = _TreeParser(text)
    t = p.binary() if family == BINARY else p.planar()
    p.done()
    return t
