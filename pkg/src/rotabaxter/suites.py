"""Property suites shared by the CLI ``check`` command and the acceptance
tests.  Every check returns a :class:`CheckResult`; exact arithmetic means a
check passes only when every residual is zero."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .dendriform import (
    DOT,
    PREC,
    PREC_PRIME,
    STAR,
    SUCC,
    check_dialgebra,
    check_trialgebra,
    dialgebra_ops,
    induced_dendriform,
    induced_op,
    to_dialgebra,
    trialgebra_ops,
)
from .enveloping import EnvelopeError, identity_map, verify_envelope
from .free import Context, Element, Morphism, context, rb_apply
from .oracles import OracleError, PolynomialOracle, SequenceOracle, check_rb_oracle
from .sampling import random_bracket_word, random_element, random_word
from .trees import (
    BINARY,
    LEAF,
    PLANAR,
    TreeElement,
    catalan,
    enumerate_trees,
    is_diword,
    is_diword_by_conditions,
    is_triword,
    phi,
    psi,
    render_tree,
    super_catalan,
    tree_dendriform,
)
from .words import Word, words_of_size

BASES = ("zero", "tensor")
WEIGHTS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2))

# sigma(i) for i = 1..11: left term i equals right term SIGMA[i-1]
SIGMA = (1, 6, 9, 2, 4, 7, 10, 5, 3, 8, 11)


@dataclass
class CheckResult:
    name: str
    passed: bool
    trials: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name}  ({self.trials} trials){extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "trials": self.trials, "detail": self.detail}


def _label(base: str, lam: Fraction) -> str:
    return f"base={base} weight={lam}"


def _run(name: str, trials: int, body: Callable[[int], str | None]) -> CheckResult:
    """Run ``body(i)`` for each trial; a returned string is a counterexample."""
    for i in range(trials):
        bad = body(i)
        if bad:
            return CheckResult(name, False, i + 1, bad)
    return CheckResult(name, True, trials)


# ------------------------------------------------------------------ words


def check_associativity(ctx: Context, rng: random.Random, trials: int, name: str | None = None) -> CheckResult:
    fm = ctx.base.kind == "free_monoid"

    def body(_):
        a, b, c = (ctx.word(random_word(rng, free_monoid=fm)) for _ in range(3))
        res = ctx.mul(ctx.mul(a, b), c) - ctx.mul(a, ctx.mul(b, c))
        if not res.is_zero():
            return f"a={a} b={b} c={c} residual={res}"

    return _run(name or f"associativity [{_label(ctx.base.tag, ctx.weight)}]", trials, body)


def check_rb_identity(ctx: Context, rng: random.Random, trials: int, name: str | None = None) -> CheckResult:
    fm = ctx.base.kind == "free_monoid"
    lam = ctx.weight

    def body(_):
        x, y = (ctx.word(random_word(rng, free_monoid=fm)) for _ in range(2))
        rx, ry = rb_apply(x), rb_apply(y)
        res = ctx.mul(rx, ry) - rb_apply(ctx.mul(rx, y) + ctx.mul(x, ry) + lam * ctx.mul(x, y))
        if not res.is_zero():
            return f"x={x} y={y} residual={res}"

    return _run(name or f"Rota-Baxter identity [{_label(ctx.base.tag, ctx.weight)}]", trials, body)


def eleven_terms(ctx: Context, a: Element, b: Element, c: Element) -> tuple[list, list]:
    """The eleven terms of ([a][b])[c] and of [a]([b][c]) before
    cancellation, as ``(weight power, bracketed element)`` pairs in order."""
    m, R = ctx.mul, rb_apply
    left = [
        (0, R(m(R(m(R(a), b)), c))),
        (0, R(m(m(R(a), b), R(c)))),
        (1, R(m(m(R(a), b), c))),
        (0, R(m(R(m(a, R(b))), c))),
        (0, R(m(a, R(m(R(b), c))))),
        (0, R(m(a, R(m(b, R(c)))))),
        (1, R(m(a, R(m(b, c))))),
        (1, R(m(m(a, R(b)), c))),
        (1, R(m(R(m(a, b)), c))),
        (1, R(m(m(a, b), R(c)))),
        (2, R(m(m(a, b), c))),
    ]
    right = [
        (0, R(m(R(m(R(a), b)), c))),
        (0, R(m(R(m(a, R(b))), c))),
        (1, R(m(R(m(a, b)), c))),
        (0, R(m(a, R(m(R(b), c))))),
        (1, R(m(a, m(R(b), c)))),
        (0, R(m(R(a), m(b, R(c))))),
        (0, R(m(a, R(m(b, R(c)))))),
        (1, R(m(a, m(b, R(c))))),
        (1, R(m(R(a), m(b, c)))),
        (1, R(m(a, R(m(b, c))))),
        (2, R(m(a, m(b, c)))),
    ]
    return left, right


def eleven_term_matching(ctx: Context, a: Element, b: Element, c: Element) -> str | None:
    """None when term i on the left equals term sigma(i) on the right for
    every i, and both sums equal the products computed directly; otherwise
    a description of the mismatch."""
    left, right = eleven_terms(ctx, a, b, c)
    for i, j in enumerate(SIGMA):
        if left[i] != right[j - 1]:
            return f"term {i + 1} does not match term {j}"
    lam = ctx.weight

    def total(terms):
        out = ctx.zero()
        for k, e in terms:
            out = out + (lam**k) * e
        return out

    ra, rb, rc = rb_apply(a), rb_apply(b), rb_apply(c)
    if total(left) != ctx.mul(ctx.mul(ra, rb), rc):
        return "left terms do not sum to ([a][b])[c]"
    if total(right) != ctx.mul(ra, ctx.mul(rb, rc)):
        return "right terms do not sum to [a]([b][c])"
    return None


def check_eleven_terms(ctx: Context, rng: random.Random, trials: int, name: str | None = None) -> CheckResult:
    fm = ctx.base.kind == "free_monoid"

    def body(_):
        a, b, c = (ctx.word(random_bracket_word(rng, free_monoid=fm).inner) for _ in range(3))
        bad = eleven_term_matching(ctx, a, b, c)
        if bad:
            return f"a={a} b={b} c={c}: {bad}"

    return _run(name or f"eleven-term matching [{_label(ctx.base.tag, ctx.weight)}]", trials, body)


def words_suite(rng: random.Random, trials: int, bases=BASES, weights=WEIGHTS) -> list[CheckResult]:
    out = []
    for base in bases:
        for lam in weights:
            ctx = context(base, lam)
            out.append(check_associativity(ctx, rng, trials))
            out.append(check_rb_identity(ctx, rng, trials))
            out.append(check_eleven_terms(ctx, rng, max(1, trials // 5)))
    return out


# ------------------------------------------------------------- dendriform


def _free_sampler(ctx: Context, rng: random.Random, denominators=(1, 1, 2)):
    return lambda: random_element(ctx, rng, denominators=denominators)


def _oracle_sampler(o, rng: random.Random):
    return lambda: o.random_element(rng)


def check_axioms(A, sample: Callable[[], object], trials: int, label: str) -> list[CheckResult]:
    """Trialgebra axioms for (prec, succ, dot), dialgebra axioms for
    (prec', succ), and, at weight 0, for (prec, succ)."""
    tri, di_primed = trialgebra_ops(A), dialgebra_ops(A, primed=True)
    checks = [("trialgebra axioms", tri, check_trialgebra), ("dialgebra axioms (prec', succ)", di_primed, check_dialgebra)]
    if A.weight == 0:
        checks.append(("dialgebra axioms (prec, succ)", dialgebra_ops(A, primed=False), check_dialgebra))
    triples = [(sample(), sample(), sample()) for _ in range(trials)]
    out = []
    for name, ops, check in checks:

        def body(i, ops=ops, check=check):
            rep = check(ops, triples[i])
            if not rep.passed:
                ax, r = rep.failures()[0]
                return f"{ax} fails on {tuple(map(str, triples[i]))}: residual {r}"

        out.append(_run(f"{name} [{label}]", trials, body))
    return out


def check_to_dialgebra(A, sample: Callable[[], object], trials: int, label: str) -> CheckResult:
    prec2, succ2 = to_dialgebra(trialgebra_ops(A))

    def body(_):
        x, y = sample(), sample()
        if prec2(x, y) != induced_op(A, PREC_PRIME, x, y):
            return f"prec + dot != prec' on ({x}, {y})"
        if succ2(x, y) != induced_op(A, SUCC, x, y):
            return f"succ changed on ({x}, {y})"

    return _run(f"to_dialgebra = (prec', succ) [{label}]", trials, body)


def dendriform_suite(rng: random.Random, trials: int, bases=BASES, weights=WEIGHTS) -> list[CheckResult]:
    out = []
    for base in bases:
        for lam in weights:
            ctx = context(base, lam)
            # the axioms are trilinear, so integer coefficients lose nothing
            out += check_axioms(ctx, _free_sampler(ctx, rng, (1,)), trials, _label(base, lam))
            out.append(check_to_dialgebra(ctx, _free_sampler(ctx, rng), trials, _label(base, lam)))
    for o in (SequenceOracle(6, 1), SequenceOracle(6, -1), SequenceOracle(6, 2), PolynomialOracle()):
        out += check_axioms(o, _oracle_sampler(o, rng), trials, o.describe())
        out.append(check_to_dialgebra(o, _oracle_sampler(o, rng), trials, o.describe()))
    return out


# ---------------------------------------------------------------- oracles


def oracle_suite(rng: random.Random, samples: int) -> list[CheckResult]:
    out = []
    for o in (SequenceOracle(6, 1), SequenceOracle(6, -1), SequenceOracle(6, 2), PolynomialOracle(), PolynomialOracle(3)):
        try:
            check_rb_oracle(o, samples, rng)
            out.append(CheckResult(f"oracle soundness [{o.describe()}]", True, samples))
        except OracleError as exc:
            out.append(CheckResult(f"oracle soundness [{o.describe()}]", False, samples, f"{exc}: {exc.witness}"))
    return out


def _poly_square_zero(o: PolynomialOracle, rng: random.Random):
    # multiples of t^2 square to zero mod t^4
    return o.element([0, 0, rng.randint(-3, 3), rng.randint(-3, 3)])


def morphism_targets(rng: random.Random) -> list[tuple[Context, object, dict]]:
    """(context, oracle, letter map) triples on which f-bar must be a
    Rota-Baxter morphism."""
    gens = ("x", "y", "z")
    out = []
    for lam in (1, 2):
        o = SequenceOracle(6, lam)
        out.append((context("tensor", lam, gens), o, {g: o.random_element(rng) for g in gens}))
    p = PolynomialOracle()
    out.append((context("tensor", 0, gens), p, {g: p.random_element(rng, degree=2) for g in gens}))
    p3 = PolynomialOracle(3)
    out.append((context("zero", 0, gens), p3, {g: _poly_square_zero(p3, rng) for g in gens}))
    return out


def check_morphism(ctx: Context, o, f: dict, rng: random.Random, trials: int) -> CheckResult:
    fbar = Morphism(ctx, f, o)

    def body(_):
        a, b = random_element(ctx, rng), random_element(ctx, rng)
        if fbar(ctx.mul(a, b)) != o.mul(fbar(a), fbar(b)):
            return f"f(ab) != f(a)f(b) for a={a} b={b}"
        if fbar(rb_apply(a)) != o.rb(fbar(a)):
            return f"f(R(a)) != R(f(a)) for a={a}"

    return _run(f"morphism f-bar [{_label(ctx.base.tag, ctx.weight)} -> {o.describe()}]", trials, body)


def morphism_suite(rng: random.Random, trials: int) -> list[CheckResult]:
    return [check_morphism(ctx, o, f, rng, trials) for ctx, o, f in morphism_targets(rng)]


# --------------------------------------------------------------- envelope


def envelope_cases() -> list[tuple[str, object, object]]:
    seq = SequenceOracle(6, 1)
    poly = PolynomialOracle(3)
    return [
        ("induced trialgebra on sequences", induced_dendriform(seq, [f"e{i}" for i in range(6)]), seq),
        ("induced dialgebra on polynomials", induced_dendriform(poly, [f"t{i}" for i in range(4)], trialgebra=False), poly),
    ]


def envelope_suite() -> list[CheckResult]:
    out = []
    for name, D, o in envelope_cases():
        try:
            D.validate()
            rep = verify_envelope(D, identity_map(D, o), o)
        except (EnvelopeError, ValueError) as exc:
            out.append(CheckResult(f"envelope annihilation [{name}]", False, 0, str(exc)))
            continue
        bad = [r for r in rep.results if not r.passed]
        detail = "" if not bad else f"{bad[0].pair} {bad[0].generator}: {bad[0].residual}"
        out.append(CheckResult(f"envelope annihilation [{name}]", not bad, len(rep.results), detail))
    return out


# ------------------------------------------------------------------ trees


def tree_count_table(max_n: int) -> dict[str, list[int]]:
    return {
        BINARY: [len(enumerate_trees(BINARY, n)) for n in range(max_n + 1)],
        PLANAR: [len(enumerate_trees(PLANAR, n)) for n in range(max_n + 1)],
    }


def check_tree_counts(max_n: int) -> list[CheckResult]:
    table = tree_count_table(max_n)
    out = []
    for family, oracle in ((BINARY, catalan), (PLANAR, super_catalan)):
        want = [oracle(n) for n in range(max_n + 1)]
        got = table[family]
        out.append(CheckResult(f"{family} tree counts n=0..{max_n}", got == want, max_n + 1, f"got {got}, want {want}" if got != want else ""))
    return out


def _embed(ctx: Context, emb, e: TreeElement) -> Element:
    return Element(ctx, {emb(t): c for t, c in e.terms()})


def check_embedding_hom(family: str, max_leaves: int, alphabet: Sequence[str]) -> CheckResult:
    """phi (binary, zero base, weight 0) or psi (planar, tensor base,
    weight 1) commutes with the dendriform operations on all pairs of
    decorated trees with at most ``max_leaves`` leaves."""
    if family == BINARY:
        ctx, emb, kinds = context("zero", 0), phi, (PREC, SUCC)
    else:
        ctx, emb, kinds = context("tensor", 1), psi, (PREC, SUCC, DOT)
    trees = [t for n in range(1, max_leaves) for t in enumerate_trees(family, n, alphabet)]
    images = {t: ctx.word(emb(t)) for t in trees}
    n = 0
    for t, u in itertools.product(trees, repeat=2):
        for kind in kinds:
            lhs = _embed(ctx, emb, tree_dendriform(family, kind, TreeElement.of(family, t), TreeElement.of(family, u)))
            rhs = induced_op(ctx, kind, images[t], images[u])
            n += 1
            if lhs != rhs:
                return CheckResult(f"{emb.__name__} homomorphism", False, n, f"{kind} on {render_tree(family, t)}, {render_tree(family, u)}")
    return CheckResult(f"{emb.__name__} homomorphism ({family}, <= {max_leaves} leaves, alphabet {''.join(alphabet)})", True, n)


def check_star_unit(family: str, max_n: int, alphabet: Sequence[str]) -> CheckResult:
    leaf = TreeElement.of(family, LEAF)
    trees = [t for n in range(1, max_n + 1) for t in enumerate_trees(family, n, alphabet)]
    for t in trees:
        e = TreeElement.of(family, t)
        if tree_dendriform(family, STAR, leaf, e) != e or tree_dendriform(family, STAR, e, leaf) != e:
            return CheckResult(f"leaf is the unit of star ({family})", False, len(trees), render_tree(family, t))
    return CheckResult(f"leaf is the unit of star ({family})", True, len(trees))


def word_side(family: str, n: int, alphabet: Sequence[str]) -> list[Word]:
    """Diwords (binary) or triwords (planar) with n generator occurrences,
    found by filtering all words of that size."""
    if family == BINARY:
        ws = words_of_size(alphabet, n, n, free_monoid=False)
        return [w for w in ws if is_diword(w)]
    ws = words_of_size(alphabet, n, n, free_monoid=True)
    return [w for w in ws if is_triword(w)]


def check_embedding_image(family: str, max_n: int, alphabet: Sequence[str]) -> list[CheckResult]:
    emb = phi if family == BINARY else psi
    pred = "is_diword" if family == BINARY else "is_triword"
    inj_ok, img_ok, cond_ok = True, True, True
    inj_detail = img_detail = cond_detail = ""
    total = 0
    for n in range(1, max_n + 1):
        trees = enumerate_trees(family, n, alphabet)
        images = [emb(t) for t in trees]
        total += len(trees)
        if len(set(images)) != len(images) and inj_ok:
            inj_ok, inj_detail = False, f"collision at n={n}"
        words = word_side(family, n, alphabet)
        if set(images) != set(words) and img_ok:
            img_ok = False
            img_detail = f"n={n}: {len(set(images))} images vs {len(words)} words"
        if family == BINARY:
            literal = [w for w in words_of_size(alphabet, n, n, free_monoid=False) if is_diword_by_conditions(w)]
            if set(literal) != set(words) and cond_ok:
                cond_ok, cond_detail = False, f"n={n}: recursive and literal diword tests disagree"
    out = [
        CheckResult(f"{emb.__name__} injective (n <= {max_n})", inj_ok, total, inj_detail),
        CheckResult(f"{emb.__name__} image = {pred} words (n <= {max_n})", img_ok, total, img_detail),
    ]
    if family == BINARY:
        out.append(CheckResult(f"diword conditions agree with recursion (n <= {max_n})", cond_ok, max_n, cond_detail))
    return out


def trees_suite(max_n: int = 4, alphabet: Sequence[str] = ("x", "y")) -> list[CheckResult]:
    out = check_tree_counts(max_n)
    for family in (BINARY, PLANAR):
        out.append(check_embedding_hom(family, min(max_n, 3) + 1, alphabet))
        out += check_embedding_image(family, max_n, alphabet)
        out.append(check_star_unit(family, min(max_n, 3), alphabet))
    return out


def summarize(results: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in results)
