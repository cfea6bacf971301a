"""Universal enveloping Rota-Baxter algebras of dendriform algebras, made
checkable.

The enveloping algebra of a dendriform algebra D is a quotient of a free
Rota-Baxter algebra by the ideal generated by

    trialgebra:  x prec y - x[y],            x succ y - [x]y
    dialgebra:   x prec y - x[y] - lam x.y,  x succ y - [x]y

The quotient itself is never built.  What is computed is the factorization
property: for a dendriform morphism f from D into the induced structure of
a Rota-Baxter algebra A, the extension of f to the free algebra sends every
generator to zero.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .base import free_monoid
from .dendriform import DOT, PREC, PREC_PRIME, SUCC, Coords, FiniteDendriform, induced_op
from .free import Context, Element, Morphism, MorphismError, rb_apply
from .words import Letter, Word

REPORT_SCHEMA = 1


class EnvelopeError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def tri_context(D: FiniteDendriform, weight) -> Context:
    """Free Rota-Baxter algebra of the given weight over the algebra (D, dot)."""
    if not D.trialgebra:
        raise EnvelopeError("trialgebra generators need a trialgebra")
    return Context(D.dot_base(), Fraction(weight), D.basis)


def di_context(D: FiniteDendriform, weight) -> Context:
    """Free Rota-Baxter algebra of the given weight over the tensor algebra T(D)."""
    return Context(free_monoid(), Fraction(weight), D.basis)


def embed(ctx: Context, D: FiniteDendriform, v: Coords) -> Element:
    """Linear injection of D into the free algebra (basis element -> letter)."""
    return Element(ctx, {Word((Letter((n,)),)): c for n, c in zip(D.basis, v.c) if c})


def tri_ideal_generators(D: FiniteDendriform, ctx: Context, x: str, y: str) -> tuple[Element, Element]:
    vx, vy = D.vec(x), D.vec(y)
    jx, jy = embed(ctx, D, vx), embed(ctx, D, vy)
    g1 = embed(ctx, D, D.op(PREC, vx, vy)) - ctx.mul(jx, rb_apply(jy))
    g2 = embed(ctx, D, D.op(SUCC, vx, vy)) - ctx.mul(rb_apply(jx), jy)
    return g1, g2


def di_ideal_generators(D: FiniteDendriform, ctx: Context, x: str, y: str, weight=None) -> tuple[Element, Element]:
    lam = ctx.weight if weight is None else Fraction(weight)
    if ctx.base.kind != "free_monoid":
        raise EnvelopeError("dialgebra generators live over the tensor algebra (free-monoid base)")
    vx, vy = D.vec(x), D.vec(y)
    jx, jy = embed(ctx, D, vx), embed(ctx, D, vy)
    tensor = ctx.gen(x, y)
    g1 = embed(ctx, D, D.op(PREC, vx, vy)) - ctx.mul(jx, rb_apply(jy)) - lam * tensor
    g2 = embed(ctx, D, D.op(SUCC, vx, vy)) - ctx.mul(rb_apply(jx), jy)
    return g1, g2


@dataclass
class PairResult:
    pair: tuple[str, str]
    generator: str
    generator_text: str
    residual: object

    @property
    def passed(self) -> bool:
        r = self.residual
        return r.is_zero() if hasattr(r, "is_zero") else r == 0

    def to_json(self) -> dict:
        r = self.residual
        coords = getattr(r, "c", ())
        return {
            "pair": list(self.pair),
            "generator": self.generator,
            "element": self.generator_text,
            "residual_terms": [[i, str(c)] for i, c in enumerate(coords) if c],
            "pass": self.passed,
        }


@dataclass
class EnvelopeReport:
    kind: str
    oracle: str
    weight: Fraction
    morphism_checks: int
    results: list[PairResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "kind": self.kind,
            "oracle": self.oracle,
            "weight": str(self.weight),
            "morphism_checks": self.morphism_checks,
            "pass": self.passed,
            "results": [r.to_json() for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _linear_image(D: FiniteDendriform, f: Mapping[str, object], target, v: Coords):
    out = target.zero()
    for n, c in zip(D.basis, v.c):
        if c:
            out = out + c * f[n]
    return out


def check_dendriform_morphism(D: FiniteDendriform, f: Mapping[str, object], target) -> int:
    """Check f(x op y) = f(x) op_R f(y) on all basis pairs, where op_R is the
    induced structure on ``target`` (``prec, succ, dot`` for a trialgebra,
    ``prec', succ`` for a dialgebra)."""
    if D.trialgebra:
        ops = {PREC: PREC, SUCC: SUCC, DOT: DOT}
    else:
        ops = {PREC: PREC_PRIME, SUCC: SUCC}
    n = 0
    for x, y in itertools.product(D.basis, repeat=2):
        for op, induced in ops.items():
            lhs = _linear_image(D, f, target, D.op(op, D.vec(x), D.vec(y)))
            rhs = induced_op(target, induced, f[x], f[y], dialgebra=not D.trialgebra)
            n += 1
            if lhs != rhs:
                raise EnvelopeError(f"f is not a dendriform morphism: f({x} {op} {y}) != f({x}) {op} f({y})", witness=(x, op, y, lhs, rhs))
    return n


def verify_envelope(
    D: FiniteDendriform,
    f: Mapping[str, object],
    oracle,
    sample_pairs: int | None = None,
    rng: random.Random | None = None,
) -> EnvelopeReport:
    """Evaluate the extension of ``f`` on both ideal generators for basis
    pairs of D (all pairs, or ``sample_pairs`` of them chosen with ``rng``).

    ``f`` must be a dendriform morphism into the induced structure on
    ``oracle``; that is checked first and an :class:`EnvelopeError` raised
    if it fails.
    """
    missing = [n for n in D.basis if n not in f]
    if missing:
        raise EnvelopeError(f"f has no image for {missing}")
    checks = check_dendriform_morphism(D, f, oracle)
    weight = Fraction(oracle.weight)
    if D.trialgebra:
        ctx = tri_context(D, weight)
        make: Callable = lambda x, y: tri_ideal_generators(D, ctx, x, y)  # noqa: E731
    else:
        ctx = di_context(D, weight)
        make = lambda x, y: di_ideal_generators(D, ctx, x, y)  # noqa: E731
    try:
        fbar = Morphism(ctx, dict(f), oracle, validate_on=[Letter((n,)) for n in D.basis])
    except MorphismError as exc:
        raise EnvelopeError(f"f does not extend to the free algebra: {exc}", witness=exc.witness) from None
    pairs = list(itertools.product(D.basis, repeat=2))
    if sample_pairs is not None and sample_pairs < len(pairs):
        rng = rng or random.Random(0)
        pairs = sorted(rng.sample(pairs, sample_pairs), key=lambda p: (D.index(p[0]), D.index(p[1])))
    report = EnvelopeReport(D.kind, oracle.describe(), weight, checks)
    for x, y in pairs:
        for name, g in zip((PREC, SUCC), make(x, y)):
            report.results.append(PairResult((x, y), name, str(g), fbar(g)))
    return report


def identity_map(D: FiniteDendriform, oracle) -> dict[str, object]:
    """Send the i-th basis name to the i-th basis vector of the oracle."""
    basis = oracle.basis()
    if len(basis) != D.dim:
        raise EnvelopeError("dimension mismatch between D and the oracle")
    return dict(zip(D.basis, basis))


def perturb(D: FiniteDendriform, op: str, pair: tuple[str, str], delta: Sequence) -> FiniteDendriform:
    """A copy of D with one structure constant vector shifted by ``delta``."""
    tables = {k: dict(v) for k, v in D.tables.items()}
    key = (D.index(pair[0]), D.index(pair[1]))
    old = tables[op].get(key, (Fraction(0),) * D.dim)
    tables[op][key] = tuple(Fraction(a) + Fraction(b) for a, b in zip(old, delta))
    return FiniteDendriform(D.basis, tables, D.trialgebra)
