import pytest

from rotabaxter.dendriform import (
    DOT,
    PREC,
    SUCC,
    DendriformError,
    check_dialgebra,
    check_trialgebra,
    dialgebra_ops,
    from_mapping,
    induced_dendriform,
    induced_op,
    parse_dendriform,
    to_dialgebra,
    trialgebra_ops,
)
from rotabaxter.free import context
from rotabaxter.oracles import PolynomialOracle, Seq, SequenceOracle
from rotabaxter.parsing import parse_element
from rotabaxter.sampling import make_rng, random_element


def test_induced_op_examples():
    z = context("zero", 0)
    assert str(induced_op(z, PREC, z.gen("x"), z.gen("y"))) == "x [y]"
    t = context("tensor", 1)
    assert str(induced_op(t, DOT, t.gen("x"), t.gen("y"))) == "x.y"
    o = SequenceOracle(3, 1)
    a, b = Seq([1, 1, 1]), Seq([1, 2, 3])
    assert induced_op(o, PREC, a, b) == Seq([0, 1, 3])
    assert induced_op(o, SUCC, a, b) == Seq([0, 2, 6])


def test_dot_rejected_in_dialgebra_mode():
    with pytest.raises(DendriformError):
        induced_op(context(), DOT, context().gen("x"), context().gen("y"), dialgebra=True)


@pytest.mark.parametrize("lam", [0, 1, -1, 2])
def test_trialgebra_on_free_algebra(lam):
    ctx = context("tensor", lam)
    rng = make_rng(lam + 10)
    for _ in range(20):
        t = tuple(random_element(ctx, rng) for _ in range(3))
        rep = check_trialgebra(trialgebra_ops(ctx), t)
        assert rep.passed and len(rep.residuals) == 7
        assert check_dialgebra(dialgebra_ops(ctx), t).passed


def test_weight_zero_dialgebra():
    ctx = context("zero", 0)
    rng = make_rng(5)
    for _ in range(20):
        t = tuple(random_element(ctx, rng) for _ in range(3))
        assert check_dialgebra(dialgebra_ops(ctx, primed=False), t).passed


def test_swapped_operations_fail():
    ctx = context("zero", 0)
    prec, succ = dialgebra_ops(ctx, primed=False)
    swapped = (succ, prec)
    t = tuple(parse_element(s, ctx) for s in ("x", "y", "z"))
    rep = check_dialgebra(swapped, t)
    assert not rep.passed
    assert rep.failures()
    assert any(not r.is_zero() for r in rep.residuals)


def test_dot_zero_reduces_to_dialgebra():
    ctx = context("zero", 0)
    rng = make_rng(2)
    ops = trialgebra_ops(ctx)
    for _ in range(10):
        t = tuple(random_element(ctx, rng) for _ in range(3))
        rep = check_trialgebra(ops, t)
        assert all(r.is_zero() for r in rep.residuals[3:])


def test_to_dialgebra():
    ctx = context("tensor", 1)
    rng = make_rng(8)
    samples = [tuple(random_element(ctx, rng) for _ in range(3)) for _ in range(5)]
    p2, s2 = to_dialgebra(trialgebra_ops(ctx), samples)
    pp, ss = dialgebra_ops(ctx)
    for x, y, _ in samples:
        assert p2(x, y) == pp(x, y) and s2(x, y) == ss(x, y)
    # dot = 0 leaves the pair unchanged
    z = context("zero", 0)
    p, s, _ = trialgebra_ops(z)
    p3, _ = to_dialgebra(trialgebra_ops(z))
    x, y = z.gen("x"), z.gen("y")
    assert p3(x, y) == p(x, y)


def test_to_dialgebra_rejects_non_trialgebra():
    ctx = context("zero", 0)
    prec, succ, dot = trialgebra_ops(ctx)
    t = tuple(parse_element(s, ctx) for s in ("x", "y", "z"))
    with pytest.raises(DendriformError):
        to_dialgebra((succ, prec, dot), [t])


def test_sequence_oracle_dialgebra():
    o = SequenceOracle(5, 1)
    rng = make_rng(4)
    p2, s2 = to_dialgebra(trialgebra_ops(o))
    for _ in range(100):
        t = tuple(o.random_element(rng) for _ in range(3))
        assert check_dialgebra((p2, s2), t).passed


def test_induced_finite_structures_validate():
    D = induced_dendriform(SequenceOracle(3, 1), ["a", "b", "c"])
    assert D.validate() == 27
    P = induced_dendriform(PolynomialOracle(3), ["t0", "t1", "t2", "t3"], trialgebra=False)
    assert P.validate() == 64
    # t0 prec t0 = 1 * R(1) = t
    assert P.op(PREC, P.vec("t0"), P.vec("t0")) == P.vec("t1")


def test_parse_and_dump_round_trip():
    P = induced_dendriform(PolynomialOracle(3), ["t0", "t1", "t2", "t3"], trialgebra=False)
    Q = parse_dendriform(P.dumps())
    assert Q.tables == P.tables and Q.basis == P.basis and not Q.trialgebra


def test_idempotent_trialgebra():
    # one-dimensional with prec = succ = 0 and x dot x = x
    D = from_mapping(["x"], {DOT: {("x", "x"): {"x": 1}}})
    assert D.validate() == 1
    assert D.dot_base().tag == "table"


def test_invalid_tables_rejected():
    # x prec x = x alone is a dialgebra; adding x succ x = x breaks the third axiom
    assert parse_dendriform("basis: x\nkind: dialgebra\nx prec x -> x\n").validate() == 1
    bad = parse_dendriform("basis: x\nkind: dialgebra\nx prec x -> x\nx succ x -> x\n")
    with pytest.raises(DendriformError):
        bad.validate()
    with pytest.raises(DendriformError):
        parse_dendriform("basis: x\nkind: dialgebra\nx dot x -> x\n")
    with pytest.raises(DendriformError):
        parse_dendriform("basis: x\nx prec y -> x\n")
    with pytest.raises(DendriformError):
        parse_dendriform("basis: x\nx frob x -> x\n")


def test_basis_cap():
    with pytest.raises(DendriformError):
        from_mapping([f"e{i}" for i in range(13)], {})
