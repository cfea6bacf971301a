from fractions import Fraction

import pytest

from rotabaxter.oracles import OracleError, Poly, PolynomialOracle, Seq, SequenceOracle, check_rb_oracle
from rotabaxter.sampling import make_rng


def test_partial_sums():
    o = SequenceOracle(3, 1)
    assert o.rb(Seq([1, 1, 1])) == Seq([0, 1, 2])
    assert SequenceOracle(3, 2).rb(Seq([1, 1, 1])) == Seq([0, 2, 4])


def test_sequence_identity_by_hand():
    o = SequenceOracle(3, 1)
    f = g = Seq([1, 1, 1])
    lhs = o.mul(o.rb(f), o.rb(g))
    assert lhs == Seq([0, 1, 4])
    inner = o.mul(o.rb(f), g) + o.mul(f, o.rb(g)) + o.mul(f, g)
    assert inner == Seq([1, 3, 5])
    assert o.rb(inner) == Seq([0, 1, 4])


def test_polynomial_identity_by_hand():
    o = PolynomialOracle()
    one = o.element([1])
    assert o.mul(o.rb(one), o.rb(one)) == Poly([0, 0, 1])
    assert o.rb(o.mul(o.rb(one), one) + o.mul(one, o.rb(one))) == Poly([0, 0, 1])


def test_truncation():
    o = PolynomialOracle(3)
    t2 = o.element([0, 0, 1])
    assert o.mul(t2, t2).is_zero()
    assert o.rb(o.element([0, 0, 0, 1])).is_zero()
    assert o.rb(o.element([0, 0, 1])) == Poly([0, 0, 0, Fraction(1, 3)])


def test_rendering():
    assert str(Poly([1, 0, 1])) == "1 + t^2"
    assert str(Poly([0, Fraction(-1, 2)])) == "-1/2*t"
    assert str(Seq([0, 1, 2])) == "(0, 1, 2)"


@pytest.mark.parametrize("o", [SequenceOracle(6, 1), SequenceOracle(4, -1), PolynomialOracle(), PolynomialOracle(3)])
def test_check_rb_oracle(o):
    rep = check_rb_oracle(o, 200, make_rng(3))
    assert rep["pass"] and rep["samples"] == 200


class _Broken(SequenceOracle):
    def rb(self, a):
        return Seq([sum(a.c[: i + 1]) for i in range(len(a.c))])  # inclusive sums, weight 1 -- not Rota-Baxter of weight 1


def test_check_rb_oracle_reports_witness():
    with pytest.raises(OracleError) as info:
        check_rb_oracle(_Broken(4, 1), 50, make_rng(0))
    assert info.value.witness is not None


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        check_rb_oracle(SequenceOracle(), 0)


def test_vectors_compare_with_zero():
    assert Seq([0, 0]) == 0
    assert Poly([]) == 0
    assert hash(Poly([1, 0])) == hash(Poly([1]))
