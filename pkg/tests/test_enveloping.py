from fractions import Fraction

import pytest

from rotabaxter.dendriform import PREC, SUCC, from_mapping, induced_dendriform
from rotabaxter.enveloping import (
    EnvelopeError,
    di_context,
    di_ideal_generators,
    identity_map,
    perturb,
    tri_context,
    tri_ideal_generators,
    verify_envelope,
)
from rotabaxter.oracles import PolynomialOracle, Seq, SequenceOracle
from rotabaxter.parsing import parse_element
from rotabaxter.words import word_stats

# On the idempotent algebra x x = x, R = -id is Rota-Baxter of weight 1; it
# induces x prec x = x succ x = -x and x dot x = x.
IDEMPOTENT = from_mapping(["x"], {PREC: {("x", "x"): {"x": -1}}, SUCC: {("x", "x"): {"x": -1}}, "dot": {("x", "x"): {"x": 1}}})


def test_idempotent_trialgebra_generators():
    D = IDEMPOTENT
    assert D.validate() == 1
    ctx = tri_context(D, 1)
    g1, g2 = tri_ideal_generators(D, ctx, "x", "x")
    assert str(g1) == "-x - x [x]"
    assert str(g2) == "-x - [x] x"


def test_vanishing_structure_constant():
    D = from_mapping(["x", "y"], {}, trialgebra=True)
    ctx = tri_context(D, 0)
    g1, _ = tri_ideal_generators(D, ctx, "x", "y")
    assert g1 == -parse_element("x [y]", ctx)


def test_generator_head_and_tail():
    D = induced_dendriform(SequenceOracle(3, 1), ["a", "b", "c"])
    ctx = tri_context(D, 1)
    for x in D.basis:
        for y in D.basis:
            g1, g2 = tri_ideal_generators(D, ctx, x, y)
            for w in g1.words():
                if w.breadth > 1:
                    assert (w.head, w.tail) == (0, 1)
            for w in g2.words():
                if w.breadth > 1:
                    assert (word_stats(w).head, word_stats(w).tail) == (1, 0)


def test_dialgebra_generators():
    D = from_mapping(["x", "y"], {PREC: {("x", "y"): {"y": 1}}}, trialgebra=False)
    ctx = di_context(D, 1)
    g1, g2 = di_ideal_generators(D, ctx, "x", "y")
    assert g1 == parse_element("y - x [y] - x.y", ctx)
    assert g2 == -parse_element("[x] y", ctx)
    (w,) = [w for w in g1.words() if str(w) == "x.y"]
    assert (w.depth, w.breadth) == (0, 1)


def test_weight_zero_dialgebra_matches_trialgebra_shape():
    D = from_mapping(["x", "y"], {PREC: {("x", "y"): {"y": 2}}, SUCC: {("y", "x"): {"x": 1}}}, trialgebra=False)
    T = from_mapping(["x", "y"], {PREC: {("x", "y"): {"y": 2}}, SUCC: {("y", "x"): {"x": 1}}}, trialgebra=True)
    dctx, tctx = di_context(D, 0), tri_context(T, 0)
    for x in D.basis:
        for y in D.basis:
            dg = [str(g) for g in di_ideal_generators(D, dctx, x, y)]
            tg = [str(g) for g in tri_ideal_generators(T, tctx, x, y)]
            assert dg == tg


def test_sequence_trialgebra_annihilation():
    o = SequenceOracle(3, 1)
    D = induced_dendriform(o, ["a", "b", "c"])
    rep = verify_envelope(D, identity_map(D, o), o)
    assert rep.passed and len(rep.results) == 18
    assert rep.to_json()["schema"] == 1
    assert all(r["residual_terms"] == [] for r in rep.to_json()["results"])


def test_polynomial_dialgebra_annihilation():
    o = PolynomialOracle(3)
    D = induced_dendriform(o, ["t0", "t1", "t2", "t3"], trialgebra=False)
    rep = verify_envelope(D, identity_map(D, o), o, sample_pairs=6)
    assert rep.passed and len(rep.results) == 12


def test_perturbed_structure_fails_validation():
    o = SequenceOracle(3, 1)
    D = induced_dendriform(o, ["a", "b", "c"])
    P = perturb(D, PREC, ("a", "b"), [0, 0, 1])
    with pytest.raises(EnvelopeError) as info:
        verify_envelope(P, identity_map(P, o), o)
    assert info.value.witness[:3] == ("a", PREC, "b")


def test_non_multiplicative_map_is_rejected():
    # dot-table validation: f(x dot x) must equal f(x) f(x)
    o = SequenceOracle(1, 1)
    D = IDEMPOTENT
    with pytest.raises(EnvelopeError):
        verify_envelope(D, {"x": Seq([Fraction(1, 2)])}, o)


def test_missing_image():
    o = SequenceOracle(3, 1)
    D = induced_dendriform(o, ["a", "b", "c"])
    with pytest.raises(EnvelopeError):
        verify_envelope(D, {"a": o.zero()}, o)
