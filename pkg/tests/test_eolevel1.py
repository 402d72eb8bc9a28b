import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.eolevel1 import (
    GL9_MU,
    WeylElt,
    bruhat_invariant,
    canonical_filtration,
    double_coset,
    format_cycles,
    gl9_frame,
    gl9_lattice,
    model_residue_module,
    model_signatures,
    mu_weyl_set,
    normalize_mu,
    parse_cycles,
    trunc_level1,
    ResidueModule,
)
from jstrata.errors import NotBT1, NotMinuscule
from jstrata.ffield import field
from jstrata.jprobe import pi_power

F4 = field(2, 1, 2)

perms = st.integers(2, 6).flatmap(lambda h: st.permutations(list(range(1, h + 1)))).map(lambda p: WeylElt(tuple(p)))


@settings(max_examples=60, deadline=None)
@given(w=perms)
def test_group_laws(w):
    h = w.h
    e = WeylElt.identity(h)
    assert w * w.inverse() == e and w.inverse() * w == e
    assert w.inverse().length == w.length
    assert WeylElt.from_cycles(w.cycles(), h) == w


@settings(max_examples=40, deadline=None)
@given(a=perms, data=st.data())
def test_product_convention(a, data):
    b = WeylElt(tuple(data.draw(st.permutations(list(range(1, a.h + 1))))))
    for i in range(1, a.h + 1):
        assert (a * b)(i) == a(b(i))


@pytest.mark.parametrize(
    "text,h,perm",
    [("(465)", 9, (1, 2, 3, 6, 4, 5, 7, 8, 9)), ("(12)(34)", 4, (2, 1, 4, 3)), ("()", 3, (1, 2, 3))],
)
def test_cycle_notation(text, h, perm):
    assert WeylElt.from_cycles(text, h).perm == perm
    assert format_cycles(perm) == text


def test_parse_cycles_lists():
    assert parse_cycles("(36475)") == [[3, 6, 4, 7, 5]]


def test_longest_element_length():
    assert WeylElt.longest(5).length == 10


@pytest.mark.parametrize("mu,count", [((0, 1), 2), ((1, 0, 0), 3), (GL9_MU, 126), ((0, 0, 1, 1), 6)])
def test_coset_representatives(mu, count):
    ws = mu_weyl_set(mu)
    assert len(ws) == count == comb(len(mu), sum(mu))
    assert len(set(ws)) == count


def test_normalize_mu():
    assert normalize_mu((1, 0, 1, 0)) == (0, 0, 1, 1)
    with pytest.raises(NotMinuscule):
        normalize_mu((2, 0, 0))


@pytest.mark.parametrize("mu", [(0, 1), (0, 0, 1), (0, 1, 1), (0, 0, 1, 1), (0, 0, 0, 1, 1)])
def test_model_modules_are_distinguished(mu):
    # every coset representative is recovered from its own residue module
    table = model_signatures(F4, mu)
    assert sum(len(v) for v in table.values()) == len(mu_weyl_set(mu))
    assert all(len(v) == 1 for v in table.values())
    for w in mu_weyl_set(mu):
        D = model_residue_module(F4, w, mu)
        D.check()
        dims = [d for d, _ in canonical_filtration(D)]
        assert dims == sorted(dims)


def test_split_ordinary_filtration():
    # F bijective on e1, zero on e2; V the other way round
    D = ResidueModule(F4, [[1, 0], [0, 0]], [[0, 0], [0, 1]])
    dims = [d for d, _ in canonical_filtration(D)]
    assert 1 in dims


def test_not_bt1():
    D = ResidueModule(F4, [[1, 0], [0, 1]], [[1, 0], [0, 1]])
    with pytest.raises(NotBT1):
        D.check()


@pytest.mark.parametrize("mu", [(0, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1, 1)])
def test_bruhat_invariant_constant_on_double_cosets(mu):
    h = len(mu)
    for perm in itertools.permutations(range(1, h + 1)):
        w = WeylElt(perm)
        b = bruhat_invariant(w, mu)
        coset = double_coset(w, mu)
        assert b in coset
        assert b.length == min(x.length for x in coset)


@pytest.fixture(scope="module")
def gl9():
    return gl9_frame()


def test_gl9_chart_lattice(gl9):
    w = trunc_level1(gl9, gl9_lattice(gl9), GL9_MU)
    assert bruhat_invariant(w, GL9_MU).cycles() == "(465)"


def test_gl9_deformed_lattice(gl9):
    F = gl9.ctx
    c = F.generator()
    d = F.pow(c, 5)
    assert F.frobenius(d, 2) != c
    w = trunc_level1(gl9, gl9_lattice(gl9, c, d), GL9_MU)
    assert bruhat_invariant(w, GL9_MU).cycles() == "(36475)"


def test_eo_is_invariant_under_pi(gl9):
    M = gl9_lattice(gl9)
    assert trunc_level1(gl9, pi_power(gl9, 1, M), GL9_MU) == trunc_level1(gl9, M, GL9_MU)
