from fractions import Fraction

import pytest

from rotabaxter.base import finite_table
from rotabaxter.free import (
    Context,
    ContextMismatch,
    MorphismError,
    RecursionGuardError,
    add,
    context,
    embed_letter,
    eval_morphism,
    product,
    rb_apply,
    scale,
)
from rotabaxter.oracles import Seq, SequenceOracle
from rotabaxter.parsing import parse_element, parse_word
from rotabaxter.sampling import make_rng, random_word
from rotabaxter.words import Letter

# ---------------------------------------------------------------- naive oracle
# Words as nested tuples: a letter is ("L", parts), a bracket ("B", word) and
# a word a tuple of such factors.  Linear combinations are dicts.  This is a
# direct transcription of the recursive product definition, kept separate
# from the library's representation.


def n_letter(*parts):
    return (("L", parts),)


def n_bracket(w):
    return (("B", w),)


def n_mul(u, v, lam, fm):
    a, b = u[-1], v[0]
    if a[0] != b[0]:
        return {u + v: 1}
    if a[0] == "L":
        if not fm:
            return {}
        return {u[:-1] + (("L", a[1] + b[1]),) + v[1:]: 1}
    x, y = a[1], b[1]
    inner = {}
    for part, k in ((n_mul(n_bracket(x), y, lam, fm), 1), (n_mul(x, n_bracket(y), lam, fm), 1), (n_mul(x, y, lam, fm), lam)):
        for w, c in part.items():
            inner[w] = inner.get(w, 0) + k * c
    out = {}
    for w, c in inner.items():
        if c:
            key = u[:-1] + (("B", w),) + v[1:]
            out[key] = out.get(key, 0) + c
    return out


def to_naive(w):
    out = []
    for f in w.factors:
        out.append(("L", f.parts) if f.is_letter else ("B", to_naive(f.word)))
    return tuple(out)


def naive_product(u, v, lam, fm):
    return {w: c for w, c in n_mul(to_naive(u), to_naive(v), lam, fm).items() if c}


def as_naive(e):
    return {to_naive(w): c for w, c in e.terms()}


# -------------------------------------------------------------------- tests


def test_letter_times_bracket_concatenates():
    ctx = context("zero", 0)
    assert str(parse_element("x * [y]", ctx)) == "x [y]"


@pytest.mark.parametrize("lam", [0, 1, -1, 2])
def test_bracket_product_zero_base(lam):
    ctx = context("zero", lam)
    assert str(parse_element("[x] * [y]", ctx)) == "[[x] y] + [x [y]]"


def test_bracket_product_tensor_weight_one():
    ctx = context("tensor", 1)
    e = parse_element("[x] * [y]", ctx)
    assert str(e) == "[x.y] + [[x] y] + [x [y]]"
    assert as_naive(e) == naive_product(parse_word("[x]"), parse_word("[y]"), 1, True)


def test_boundary_product():
    ctx = context("zero", 0)
    e = parse_element("(x [y]) * ([z] w)", ctx)
    assert str(e) == "x [[y] z] w + x [y [z]] w"
    assert as_naive(e) == naive_product(parse_word("x [y]"), parse_word("[z] w"), 0, False)


def test_weight_two_frozen():
    # [x][[y]] = [[x][y]] + [x[[y]]] + 2[x[y]], and [x][y] = [[x]y] + [x[y]] + 2[x.y]
    ctx = context("tensor", 2)
    got = parse_element("[x] * [[y]]", ctx)
    assert str(got) == "2*[[x.y]] + 2*[x [y]] + [[[x] y]] + [[x [y]]] + [x [[y]]]"
    assert got == parse_element("[[[x] y] + [x [y]] + 2*[x.y]] + [x [[y]]] + 2*[x [y]]", ctx)


@pytest.mark.parametrize("base,lam", [("zero", 0), ("zero", 1), ("tensor", 1), ("tensor", -1), ("tensor", 2), ("tensor", 0)])
def test_product_matches_naive_evaluator(base, lam):
    ctx = context(base, lam)
    rng = make_rng(11)
    fm = base == "tensor"
    for _ in range(150):
        u = random_word(rng, free_monoid=fm)
        v = random_word(rng, free_monoid=fm)
        got = {to_naive(w): c for w, c in ctx.word_product(u, v).items() if c}
        assert got == naive_product(u, v, Fraction(lam), fm), (u, v)


def test_add_examples():
    ctx = context()
    x = ctx.gen("x")
    assert add(x, scale(-1, x)).is_zero()
    assert str(add(ctx.gen("y"), x)) == "x + y"
    bx = rb_apply(x)
    assert add(2 * bx, 3 * bx) == 5 * bx


def test_scale_examples():
    ctx = context()
    a = parse_element("x + [y]", ctx)
    assert scale(0, a).is_zero()
    assert scale(1, a) == a
    assert scale(Fraction(1, 2), 2 * ctx.gen("x")) == ctx.gen("x")


def test_rb_apply_examples():
    ctx = context()
    assert str(rb_apply(ctx.gen("x"))) == "[x]"
    assert str(rb_apply(parse_element("x + 2*y", ctx))) == "[x] + 2*[y]"
    assert rb_apply(ctx.zero()).is_zero()


def test_embed_letter():
    ctx = context()
    x, y = Letter(("x",)), Letter(("y",))
    assert str(embed_letter(ctx, x)) == "x"
    assert str(embed_letter(ctx, ((Fraction(2), x), (Fraction(3), y)))) == "2*x + 3*y"
    t = context("tensor", 1)
    e = embed_letter(t, Letter(("x", "y")))
    (w,) = e.words()
    assert (w.breadth, w.depth) == (1, 0)
    with pytest.raises(ValueError):
        embed_letter(ctx, Letter(("x", "y")))


def test_context_mismatch():
    a, b = context("zero", 0), context("zero", 1)
    with pytest.raises(ContextMismatch):
        a.gen("x") + b.gen("x")
    with pytest.raises(ContextMismatch):
        product(a, a.gen("x"), b.gen("y"))


def test_recursion_guard():
    ctx = Context(context().base, Fraction(0), max_depth_sum=4)
    deep = parse_element("[[[x]]]", ctx)
    with pytest.raises(RecursionGuardError):
        ctx.mul(deep, deep)


def test_eval_morphism_examples():
    o = SequenceOracle(3, 1)
    ctx = context("tensor", 1)
    f = {"x": Seq([1, 1, 1]), "y": Seq([1, 2, 3])}
    assert eval_morphism(ctx, f, o, parse_element("x [y]", ctx)) == Seq([0, 1, 3])
    assert eval_morphism(ctx, f, o, parse_element("[x]", ctx)) == o.rb(f["x"])
    assert eval_morphism(ctx, f, o, parse_element("x.y", ctx)) == Seq([1, 2, 3])


def test_eval_morphism_weight_mismatch():
    ctx = context("tensor", 0)
    with pytest.raises(MorphismError):
        eval_morphism(ctx, {"x": Seq([1, 1, 1])}, SequenceOracle(3, 1), ctx.gen("x"))


def test_eval_morphism_rejects_non_multiplicative_map():
    base = finite_table({("x", "x"): [(1, "x")]})
    ctx = Context(base, Fraction(1))
    with pytest.raises(MorphismError) as info:
        eval_morphism(ctx, {"x": Seq([1, 2, 3])}, SequenceOracle(3, 1), ctx.gen("x"))
    assert info.value.witness is not None
    # an idempotent image is fine
    assert eval_morphism(ctx, {"x": Seq([1, 0, 1])}, SequenceOracle(3, 1), ctx.gen("x")) == Seq([1, 0, 1])


def test_element_equality_and_hash():
    ctx = context("tensor", 1)
    a = parse_element("[x] * [y]", ctx)
    b = parse_element("[x.y] + [[x] y] + [x [y]]", ctx)
    assert a == b and hash(a) == hash(b)
    assert parse_element("x - x", ctx) == 0
