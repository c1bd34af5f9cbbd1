from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from confalg.dpoly import DPoly, NEG_INF


def P(*coeffs):
    return DPoly([Fraction(c) for c in coeffs])


rationals = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12
)
polys = st.lists(rationals, max_size=6).map(DPoly)


def test_canonical_form_drops_trailing_zeros():
    assert P(1, 2, 0, 0).coeffs == (Fraction(1), Fraction(2))
    assert P(0, 0).coeffs == ()
    assert P().is_zero()
    assert P(0, 0).degree == NEG_INF


def test_ring_arithmetic_examples():
    d, one = DPoly.d(), DPoly.one()
    assert (d + one) * d == P(0, 1, 1)  # (d+1)*d = d^2 + d
    assert (P(3, 1) * DPoly.zero()).is_zero()
    assert (P(-1, 0, 1) + P(1, 0, -1)).is_zero()


def test_divmod_examples():
    q, r = divmod(P(0, 1, 1), P(1, 1))  # (d^2+d) / (d+1)
    assert q == DPoly.d() and r.is_zero()
    q, r = divmod(P(0, 0, 1), P(-1, 1))  # d^2 / (d-1)
    assert q == P(1, 1) and r == P(1)
    q, r = divmod(DPoly.zero(), P(-1, 1))
    assert q.is_zero() and r.is_zero()


def test_divmod_rejects_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        divmod(P(1, 1), DPoly.zero())


def test_degree_and_shift():
    assert P(1).degree == 0
    assert DPoly.d(3).degree == 3
    assert P(2, 1).shift(2) == P(0, 0, 2, 1)


def test_string_rendering():
    assert str(DPoly.zero()) == "0"
    assert str(P(Fraction(1, 2), 1)) == "d + 1/2"
    assert str(P(0, -1, 3)) == "3*d^2 - d"
    assert str(P(-2)) == "-2"


def test_serialization_round_trip():
    p = P(Fraction(1, 2), 0, 3)
    assert p.to_strings() == ["1/2", "0", "3"]
    assert DPoly.from_strings(p.to_strings()) == p


@given(polys, polys)
def test_ring_commutativity_and_canonical_closure(p, q):
    assert p + q == q + p
    assert p * q == q * p
    for result in (p + q, p * q, p - q):
        assert not result.coeffs or result.coeffs[-1] != 0


@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_divmod_reassembly(p, q):
    quot, rem = divmod(p, q)
    assert q * quot + rem == p
    assert rem.degree < q.degree


@given(polys, polys, polys)
def test_distributivity(p, q, r):
    assert p * (q + r) == p * q + p * r
