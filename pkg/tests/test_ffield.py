import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.errors import ZeroInput
from jstrata.ffield import FFElem, conway_free_polynomial, element_degree, field, frobenius, is_irreducible

FIELDS = [(2, 1, 1), (2, 1, 4), (2, 2, 3), (3, 1, 2), (5, 1, 2), (3, 2, 1)]


@pytest.fixture(params=FIELDS, ids=lambda f: "p%d-r%d-e%d" % f)
def F(request):
    return field(*request.param)


def elems(F):
    return st.integers(min_value=0, max_value=F.order - 1)


def test_sizes(F):
    assert F.order == F.p ** (F.r * F.e)
    assert len(list(F.elements())) == F.order
    assert len(list(F.nonzero())) == F.order - 1


def test_generator_has_full_order(F):
    g = F.generator()
    seen = {F.pow(g, k) for k in range(F.order - 1)}
    assert len(seen) == F.order - 1


@pytest.mark.parametrize("p,r,e", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_axioms(p, r, e, data):
    F = field(p, r, e)
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a
        assert F.mul(b, F.inv(b)) == F.from_int(1)


@pytest.mark.parametrize("p,r,e", FIELDS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_frobenius_is_a_field_map(p, r, e, data):
    F = field(p, r, e)
    a, b = data.draw(elems(F)), data.draw(elems(F))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    # q-Frobenius has order e, p-Frobenius order r*e
    assert F.frobenius(a, e) == a
    assert F.frobenius_p(a, r * e) == a
    assert F.frobenius(a) == F.frobenius_p(a, r)
    assert F.frobenius(a) == F.pow(a, F.q)


def test_degree_matches_orbit_length(F):
    for a in F.nonzero():
        orbit = {a}
        x = a
        while True:
            x = F.frobenius_p(x)
            if x == a:
                break
            orbit.add(x)
        assert F.degree(a) == len(orbit)


@pytest.mark.parametrize("p,n,d", [(2, 4, 2), (2, 6, 3), (2, 6, 2), (3, 2, 1), (2, 4, 1)])
def test_subfield(p, n, d):
    F = field(p, 1, n)
    sub = F.subfield(d)
    assert len(sub) == p ** d
    assert all(F.frobenius_p(x, d) == x for x in sub)


def test_embedding_is_a_homomorphism():
    big, small = field(2, 1, 6), field(2, 1, 3)
    for a, b in itertools.product(range(small.order), repeat=2):
        ea, eb = big.embed(a, small), big.embed(b, small)
        assert big.mul(ea, eb) == big.embed(small.mul(a, b), small)
        assert big.add(ea, eb) == big.embed(small.add(a, b), small)


def test_digits_round_trip(F):
    for a in F.elements():
        d = F.digits(a)
        assert len(d) == F.r * F.e and all(0 <= x < F.p for x in d)
        assert F.from_digits(d) == a


def _brute_irreducible(f, p):
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for g in itertools.product(range(p), repeat=k):
            g = list(g) + [1]
            # long division of f by monic g
            r = list(f)
            for i in range(n - k, -1, -1):
                c = r[i + k]
                for j in range(k + 1):
                    r[i + j] = (r[i + j] - c * g[j]) % p
            if not any(r[:k]):
                return False
    return True


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_against_trial_division(p, n):
    for low in itertools.product(range(p), repeat=n):
        f = list(low) + [1]
        assert is_irreducible(f, p) == _brute_irreducible(f, p)
    assert is_irreducible(list(conway_free_polynomial(p, n)), p)


def test_wrapper_ops():
    F = field(3, 1, 2)
    g = FFElem(F, F.generator())
    assert (g * g.inverse()).value == F.from_int(1)
    assert (g ** 8).value == F.from_int(1)
    assert element_degree(g) == 2
    assert frobenius(frobenius(g, 1), 1).value == g.value
    assert (g - g).value == 0 and not (g - g)


@pytest.mark.parametrize("args", [(4, 1, 1), (2, 0, 1), (2, 1, 0), (1, 1, 1)])
def test_bad_parameters(args):
    with pytest.raises(ValueError):
        field(*args)


def test_zero_inputs():
    F = field(2, 1, 3)
    with pytest.raises(ZeroInput):
        F.degree(0)
    with pytest.raises((ZeroInput, ZeroDivisionError)):
        F.inv(0)
