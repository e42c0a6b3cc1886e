from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckbands.laurent import LaurentPoly


def P(text, var="t"):
    return LaurentPoly.parse(text, var)


def test_construction_drops_zero_coefficients():
    p = LaurentPoly({3: 0, -1: 2})
    assert list(p.items()) == [(-1, 2)]
    assert p.coeff(3) == 0 and p.coeff(-1) == 2


def test_zero_one_monomial():
    assert LaurentPoly.zero().is_zero()
    assert not LaurentPoly.one().is_zero()
    assert LaurentPoly.monomial(-2, 5).serialize() == "-2*t^5"
    with pytest.raises(ValueError):
        LaurentPoly.zero().min_exp()


def test_arithmetic_identities():
    p = P("-1*t^-4+1*t^-3+1*t^-1")
    q = P("1*t^-2-1*t^-1+1*t^0-1*t^1+1*t^2")
    assert p - p == LaurentPoly.zero()
    assert p + 0 == p and p * 1 == p
    assert (p + q) - q == p
    assert p * q == q * p
    assert (p * q).coeff(-6) == -1


def test_pow_and_unit_monomial_power():
    m = LaurentPoly.monomial(-1, 3, "A")
    assert m.unit_monomial_power(-2) == LaurentPoly.monomial(1, -6, "A")
    assert m**3 == LaurentPoly.monomial(-1, 9, "A")
    assert (P("1*t^1+1*t^0")) ** 2 == P("1*t^2+2*t^1+1*t^0")
    with pytest.raises(ValueError):
        P("1*t^1+1*t^0").unit_monomial_power(2)
    with pytest.raises(ValueError):
        LaurentPoly.monomial(2, 1).unit_monomial_power(-1)


def test_exact_div():
    delta = LaurentPoly({2: -1, -2: -1}, "A")
    prod = delta * delta * LaurentPoly.monomial(3, -1, "A")
    assert prod.exact_div(delta) == delta * LaurentPoly.monomial(3, -1, "A")
    with pytest.raises(ValueError):
        P("1*t^1+1*t^0").exact_div(P("1*t^1-1*t^0"))


def test_eval_and_subst():
    p = P("-1*t^-4+1*t^-3+1*t^-1")
    assert p.eval_int(-1) == Fraction(-3)
    assert p.eval_int(2) == Fraction(-1, 16) + Fraction(1, 8) + Fraction(1, 2)
    q = LaurentPoly({4: 1, -8: 2}, "A").subst_power(4, "t")
    assert q == LaurentPoly({1: 1, -2: 2}, "t")
    with pytest.raises(ValueError):
        LaurentPoly({3: 1}, "A").subst_power(4, "t")


def test_mirror():
    p = P("-1*t^-4+1*t^-3+1*t^-1")
    assert p.mirror() == P("1*t^1+1*t^3-1*t^4")
    assert p.mirror().mirror() == p


def test_serialize_parse_round_trip_fixed():
    for s in ("0", "1*t^0", "-1*t^-4+1*t^-3+1*t^-1", "2*t^-3-5*t^2"):
        assert P(s).serialize() == s


@st.composite
def polys(draw):
    n = draw(st.integers(0, 6))
    coeffs = {}
    for _ in range(n):
        coeffs[draw(st.integers(-8, 8))] = draw(st.integers(-9, 9))
    return LaurentPoly(coeffs)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * (q * r) == (p * q) * r
    assert p + q == q + p


@given(polys())
def test_parse_round_trip(p):
    assert LaurentPoly.parse(p.serialize()) == p


@given(polys(), st.integers(1, 4))
def test_eval_respects_subst(p, k):
    blown = LaurentPoly({e * k: c for e, c in p.items()}, "A")
    assert blown.subst_power(k, "t") == p
    assert blown.eval_int(2) == sum(
        (Fraction(c) * Fraction(2) ** (e * k) for e, c in p.items()),
        Fraction(0),
    )
