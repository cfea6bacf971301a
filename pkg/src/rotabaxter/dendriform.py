"""Dendriform structures induced by Rota-Baxter operators, axiom checkers,
and finite-dimensional dendriform algebras given by structure constants.

For a Rota-Baxter algebra ``A`` of weight ``lam`` the induced operations are

    x prec y = x R(y)          x succ y = R(x) y          x dot y = lam x y
    x prec' y = x R(y) + lam x y

``(prec, succ, dot)`` is a dendriform trialgebra and ``(prec', succ)`` a
dendriform dialgebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .base import BaseAlgebra, finite_table, parse_linear
from .oracles import ExactVector

PREC, SUCC, DOT, PREC_PRIME, STAR = "prec", "succ", "dot", "prec_prime", "star"
KINDS = (PREC, SUCC, DOT, PREC_PRIME, STAR)

Op = Callable[[object, object], object]

DIALGEBRA_AXIOMS = (
    "(x<y)<z = x<(y<z + y>z)",
    "(x>y)<z = x>(y<z)",
    "(x<y + x>y)>z = x>(y>z)",
)

TRIALGEBRA_AXIOMS = (
    "(x<y)<z = x<(y*z)",
    "(x>y)<z = x>(y<z)",
    "(x*y)>z = x>(y>z)",
    "(x>y).z = x>(y.z)",
    "(x<y).z = x.(y>z)",
    "(x.y)<z = x.(y<z)",
    "(x.y).z = x.(y.z)",
)


class DendriformError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _is_zero(r) -> bool:
    if hasattr(r, "is_zero"):
        return r.is_zero()
    return r == 0


def induced_op(A, kind: str, a, b, dialgebra: bool = False):
    """Evaluate one induced operation on ``a, b`` in the Rota-Baxter algebra
    ``A`` (anything with ``mul``, ``rb`` and ``weight``)."""
    lam = A.weight
    if kind == PREC:
        return A.mul(a, A.rb(b))
    if kind == SUCC:
        return A.mul(A.rb(a), b)
    if kind == DOT:
        if dialgebra:
            raise DendriformError("dot is not an operation of a dialgebra")
        return lam * A.mul(a, b)
    if kind == PREC_PRIME:
        return A.mul(a, A.rb(b)) + lam * A.mul(a, b)
    if kind == STAR:
        return A.mul(a, A.rb(b)) + A.mul(A.rb(a), b) + lam * A.mul(a, b)
    raise DendriformError(f"unknown operation {kind!r}")


def trialgebra_ops(A) -> tuple[Op, Op, Op]:
    return (
        lambda a, b: induced_op(A, PREC, a, b),
        lambda a, b: induced_op(A, SUCC, a, b),
        lambda a, b: induced_op(A, DOT, a, b),
    )


def dialgebra_ops(A, primed: bool = True) -> tuple[Op, Op]:
    """``(prec', succ)``; with ``primed=False`` the weight-zero pair
    ``(prec, succ)`` (a dialgebra only when the weight is 0)."""
    first = PREC_PRIME if primed else PREC
    return (
        lambda a, b: induced_op(A, first, a, b, dialgebra=True),
        lambda a, b: induced_op(A, SUCC, a, b, dialgebra=True),
    )


@dataclass
class AxiomReport:
    axioms: tuple[str, ...]
    residuals: list
    witness: tuple = ()

    @property
    def passed(self) -> bool:
        return all(_is_zero(r) for r in self.residuals)

    def failures(self) -> list[tuple[str, object]]:
        return [(name, r) for name, r in zip(self.axioms, self.residuals) if not _is_zero(r)]

    def __bool__(self) -> bool:
        return self.passed


def check_dialgebra(ops: Sequence[Op], triple) -> AxiomReport:
    prec, succ = ops
    x, y, z = triple
    res = [
        prec(prec(x, y), z) - prec(x, prec(y, z) + succ(y, z)),
        prec(succ(x, y), z) - succ(x, prec(y, z)),
        succ(prec(x, y) + succ(x, y), z) - succ(x, succ(y, z)),
    ]
    return AxiomReport(DIALGEBRA_AXIOMS, res, tuple(triple))


def check_trialgebra(ops: Sequence[Op], triple) -> AxiomReport:
    prec, succ, dot = ops
    x, y, z = triple

    def star(a, b):
        return prec(a, b) + succ(a, b) + dot(a, b)

    res = [
        prec(prec(x, y), z) - prec(x, star(y, z)),
        prec(succ(x, y), z) - succ(x, prec(y, z)),
        succ(star(x, y), z) - succ(x, succ(y, z)),
        dot(succ(x, y), z) - succ(x, dot(y, z)),
        dot(prec(x, y), z) - dot(x, succ(y, z)),
        prec(dot(x, y), z) - dot(x, prec(y, z)),
        dot(dot(x, y), z) - dot(x, dot(y, z)),
    ]
    return AxiomReport(TRIALGEBRA_AXIOMS, res, tuple(triple))


def to_dialgebra(ops: Sequence[Op], samples: Sequence[tuple] = ()) -> tuple[Op, Op]:
    """``(prec, succ, dot) -> (prec + dot, succ)``.

    The input is checked against the trialgebra axioms on each sample
    triple first; a failing sample raises :class:`DendriformError`.
    """
    prec, succ, dot = ops
    for t in samples:
        rep = check_trialgebra(ops, t)
        if not rep.passed:
            raise DendriformError(f"not a trialgebra: {rep.failures()[0][0]} fails", rep)

    def prec_prime(a, b):
        return prec(a, b) + dot(a, b)

    return prec_prime, succ


# ------------------------------------------------------- finite dendriform


class Coords(ExactVector):
    """Coordinates of an element of a :class:`FiniteDendriform`."""

    __slots__ = ()

    def __repr__(self):
        return "Coords(" + ", ".join(map(str, self.c)) + ")"


@dataclass(eq=False)
class FiniteDendriform:
    """A dendriform di- or trialgebra on a finite basis, given by structure
    constants.  ``tables[op][(i, j)]`` is the coordinate vector of
    ``basis[i] op basis[j]``; missing entries are zero."""

    basis: tuple[str, ...]
    tables: dict[str, dict[tuple[int, int], tuple[Fraction, ...]]]
    trialgebra: bool = True
    max_basis: int = 12
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.basis = tuple(self.basis)
        if len(set(self.basis)) != len(self.basis):
            raise DendriformError("duplicate basis names")
        if len(self.basis) > self.max_basis:
            raise DendriformError(f"basis of size {len(self.basis)} exceeds cap {self.max_basis}")
        self._index = {name: i for i, name in enumerate(self.basis)}
        ops = (PREC, SUCC, DOT) if self.trialgebra else (PREC, SUCC)
        for op in list(self.tables):
            if op not in ops:
                raise DendriformError(f"unexpected operation {op!r}")
        for op in ops:
            self.tables.setdefault(op, {})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def kind(self) -> str:
        return "trialgebra" if self.trialgebra else "dialgebra"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DendriformError(f"{name!r} is not a basis element") from None

    def vec(self, name: str) -> Coords:
        i = self.index(name)
        return Coords(1 if j == i else 0 for j in range(self.dim))

    def zero(self) -> Coords:
        return Coords([0] * self.dim)

    def op(self, kind: str, a: Coords, b: Coords) -> Coords:
        table = self.tables[kind]
        acc = [Fraction(0)] * self.dim
        for (i, j), vec in table.items():
            c = a.c[i] * b.c[j]
            if c:
                for k, v in enumerate(vec):
                    acc[k] += c * v
        return Coords(acc)

    def ops(self) -> tuple[Op, ...]:
        names = (PREC, SUCC, DOT) if self.trialgebra else (PREC, SUCC)
        return tuple((lambda k: (lambda a, b: self.op(k, a, b)))(k) for k in names)

    def basis_vectors(self) -> list[Coords]:
        return [self.vec(n) for n in self.basis]

    def validate(self) -> int:
        """Check every axiom on every basis triple; returns the triple count."""
        check = check_trialgebra if self.trialgebra else check_dialgebra
        ops = self.ops()
        vecs = self.basis_vectors()
        n = 0
        for t in itertools.product(vecs, repeat=3):
            rep = check(ops, t)
            n += 1
            if not rep.passed:
                names = tuple(self.basis[v.c.index(1)] for v in t)
                raise DendriformError(f"axiom {rep.failures()[0][0]} fails on {names}", rep)
        return n

    def dot_base(self) -> BaseAlgebra:
        """The algebra ``(D, dot)`` as a finite-table base."""
        table = {}
        for (i, j), vec in self.tables.get(DOT, {}).items():
            table[(self.basis[i], self.basis[j])] = [(c, self.basis[k]) for k, c in enumerate(vec) if c]
        return finite_table(table, self.basis)

    def render(self, v: Coords) -> str:
        terms = [(c, n) for c, n in zip(v.c, self.basis) if c]
        if not terms:
            return "0"
        return " + ".join(n if c == 1 else f"{c}*{n}" for c, n in terms).replace("+ -", "- ")

    def dumps(self) -> str:
        lines = [f"basis: {' '.join(self.basis)}", f"kind: {self.kind}"]
        for op in (PREC, SUCC, DOT) if self.trialgebra else (PREC, SUCC):
            for (i, j), vec in sorted(self.tables[op].items()):
                lines.append(f"{self.basis[i]} {op} {self.basis[j]} -> {self.render(Coords(vec))}")
        return "\n".join(lines) + "\n"


def induced_dendriform(A, names: Sequence[str], trialgebra: bool = True, **kw) -> FiniteDendriform:
    """Structure constants of the induced structure on a finite-dimensional
    Rota-Baxter algebra ``A`` (one exposing ``basis()`` and
    ``coordinates()``).  The dialgebra uses ``(prec', succ)``."""
    basis = A.basis()
    if len(names) != len(basis):
        raise DendriformError("need one name per basis vector")
    if trialgebra:
        ops = {PREC: PREC, SUCC: SUCC, DOT: DOT}
    else:
        ops = {PREC: PREC_PRIME, SUCC: SUCC}
    tables: dict = {op: {} for op in ops}
    for (i, a), (j, b) in itertools.product(enumerate(basis), repeat=2):
        for op, kind in ops.items():
            coords = tuple(A.coordinates(induced_op(A, kind, a, b)))
            if any(coords):
                tables[op][(i, j)] = coords
    return FiniteDendriform(tuple(names), tables, trialgebra, **kw)


def parse_dendriform(text: str, source: str = "<string>") -> FiniteDendriform:
    """Parse the structure-constant format::

        basis: x y
        kind: trialgebra
        x prec y -> 2*x + y
        x dot x -> x
    """
    basis: list[str] | None = None
    kind = "trialgebra"
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("basis:"):
            basis = line.split(":", 1)[1].split()
            continue
        if line.startswith("kind:"):
            kind = line.split(":", 1)[1].strip()
            if kind not in ("trialgebra", "dialgebra"):
                raise DendriformError(f"{source}:{lineno}: unknown kind {kind!r}")
            continue
        if "->" not in line:
            raise DendriformError(f"{source}:{lineno}: expected 'x op y -> ...'")
        lhs, rhs = line.split("->", 1)
        parts = lhs.split()
        if len(parts) != 3 or parts[1] not in (PREC, SUCC, DOT):
            raise DendriformError(f"{source}:{lineno}: expected 'x prec|succ|dot y'")
        try:
            terms = parse_linear(rhs)
        except ValueError as exc:
            raise DendriformError(f"{source}:{lineno}: {exc}") from None
        entries.append((lineno, parts, terms))
    if basis is None:
        seen: list[str] = []
        for _, parts, terms in entries:
            for n in (parts[0], parts[2], *(z for _, z in terms)):
                if n not in seen:
                    seen.append(n)
        basis = seen
    idx = {n: i for i, n in enumerate(basis)}
    trialgebra = kind == "trialgebra"
    tables: dict = {PREC: {}, SUCC: {}} | ({DOT: {}} if trialgebra else {})
    for lineno, (a, op, b), terms in entries:
        if op == DOT and not trialgebra:
            raise DendriformError(f"{source}:{lineno}: dot in a dialgebra")
        vec = [Fraction(0)] * len(basis)
        for c, z in terms:
            if z not in idx:
                raise DendriformError(f"{source}:{lineno}: unknown basis element {z!r}")
            vec[idx[z]] += c
        for n in (a, b):
            if n not in idx:
                raise DendriformError(f"{source}:{lineno}: unknown basis element {n!r}")
        tables[op][(idx[a], idx[b])] = tuple(vec)
    return FiniteDendriform(tuple(basis), tables, trialgebra)


def load_dendriform(path: str | Path) -> FiniteDendriform:
    return parse_dendriform(Path(path).read_text(encoding="utf-8"), str(path))


def from_mapping(basis: Sequence[str], ops: Mapping[str, Mapping[tuple[str, str], Mapping[str, object]]], trialgebra=True) -> FiniteDendriform:
    """Build from ``{"prec": {("x", "y"): {"z": 2}}, ...}``."""
    idx = {n: i for i, n in enumerate(basis)}
    tables: dict = {}
    for op, entries in ops.items():
        tables[op] = {}
        for (a, b), comb in entries.items():
            vec = [Fraction(0)] * len(basis)
            for z, c in comb.items():
                vec[idx[z]] += Fraction(c)
            tables[op][(idx[a], idx[b])] = tuple(vec)
    return FiniteDendriform(tuple(basis), tables, trialgebra)
