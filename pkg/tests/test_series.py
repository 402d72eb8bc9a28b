import math

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.errors import PrecisionExceeded, ZeroInput
from jstrata.ffield import field
from jstrata.series import Series, lift, sigma_series

F4 = field(2, 1, 2)
F9 = field(3, 1, 2)


def series(F, lo=-2, hi=3):
    return st.dictionaries(st.integers(lo, hi), st.integers(0, F.order - 1), max_size=5).map(
        lambda d: Series.from_dict(F, d)
    )


@pytest.mark.parametrize("F", [F4, F9], ids=["F4", "F9"])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_ring_laws(F, data):
    a, b, c = (data.draw(series(F)) for _ in range(3))
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@pytest.mark.parametrize("F", [F4, F9], ids=["F4", "F9"])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_valuation_is_additive(F, data):
    a, b = data.draw(series(F)), data.draw(series(F))
    if a.is_zero() or b.is_zero():
        assert (a * b).valuation() == math.inf
    else:
        assert (a * b).valuation() == a.valuation() + b.valuation()
    assert (a + b).valuation() >= min(a.valuation(), b.valuation())


@pytest.mark.parametrize("F", [F4, F9], ids=["F4", "F9"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_inverse_within_precision(F, data):
    a = data.draw(series(F))
    if a.is_zero():
        with pytest.raises(ZeroInput):
            a.inverse()
        return
    prod = a * a.inverse(20)
    # 1/a is certified mod t^20, so a * (1/a) is 1 modulo t^(20 + v(a))
    assert prod.truncate(10).equals(Series.one(F).truncate(10))


@pytest.mark.parametrize("F", [F4, F9], ids=["F4", "F9"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_sigma_is_a_ring_map(F, data):
    a, b = data.draw(series(F)), data.draw(series(F))
    assert (a * b).sigma() == a.sigma() * b.sigma()
    assert sigma_series(a, F.e) == a


def test_monomial_inverse_is_exact():
    s = Series.monomial(F9, 2, -3)
    inv = s.inverse()
    assert inv.exact and s * inv == Series.one(F9)


@pytest.mark.parametrize(
    "terms,v,deg",
    [({0: 1}, 0, 0), ({-2: 1, 3: 2}, -2, 3), ({5: 1}, 5, 5), ({}, math.inf, None)],
)
def test_valuation_and_degree(terms, v, deg):
    s = Series.from_dict(F9, terms)
    assert s.valuation() == v
    assert s.degree() == deg


def test_normalization_strips_zeros():
    s = Series(F4, -1, (0, 0, 1, 0))
    assert s.v_min == 1 and s.coeffs == (1,)


def test_precision_bookkeeping():
    s = Series.from_dict(F4, {0: 1, 1: 1}, prec=4)
    assert not s.exact
    with pytest.raises(PrecisionExceeded):
        s.coeff(4)
    z = Series.zero(F4, prec=3)
    assert z.lower_val() == 3
    with pytest.raises(PrecisionExceeded):
        z.valuation(certain=True)
    assert s.shift(2).prec == 6


def test_lift_and_scale():
    x = F9.generator()
    assert lift(F9, x) == Series.monomial(F9, x, 0)
    assert Series.t(F9, 2).scale(x) == Series.monomial(F9, x, 2)
    assert Series.t(F9).scale(0).is_zero()


def test_mismatched_fields():
    with pytest.raises(ValueError):
        Series.one(F4) + Series.one(F9)
