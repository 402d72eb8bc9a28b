import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.errors import FieldTooSmall, NotAChart
from jstrata.isocrystal import dieudonne_closure, make_frame
from jstrata.jprobe import normalize_in_orbit
from jstrata.lattice import Lattice
from jstrata.semimodule import (
    SemiModuleChart,
    agen_box,
    agen_char,
    agen_char_box,
    chart_of_lattice,
    chart_to_mu,
    gamma_member,
    lattice_box,
    mu_lattice,
    mu_to_chart,
    semigroup_member,
    start_gamma,
)

INF = math.inf
HALF2 = {"kind": "isoclinic-gl", "slopes": [[1, 2, 2]], "p": 2, "e": 4}
GL9 = {"kind": "superbasic-res", "m": 4, "h": 9, "p": 2, "e": 6}


def test_start_gamma_basis_vector():
    fr = make_frame({"kind": "isoclinic-gl", "slopes": [[1, 2, 3]], "p": 2, "e": 2})
    assert start_gamma(fr, fr.e("e11", 3)) == (3, INF, INF)


def test_start_gamma_shift_by_eps():
    fr = make_frame(HALF2)
    v = fr.vec([("e11", 0), ("e12", 5, fr.ctx.generator())])
    assert start_gamma(fr, v) == (0, 5)
    assert start_gamma(fr, [s.shift(1) for s in v]) == (2, 7)


def test_chart_of_standard_lattice():
    fr = make_frame({"kind": "superbasic-res", "m": 1, "h": 3, "d": 2, "p": 2, "e": 2})
    assert chart_of_lattice(fr, fr.standard()) == SemiModuleChart(3, ((1, 2, 3), (1, 2, 3)))


def test_gl9_charts():
    fr = make_frame(GL9)
    A1 = (1, 2, 5, 6, 7, 8, 9, 12, 13)
    M = Lattice.generated([fr.e("e", i) for i in A1])
    assert chart_of_lattice(fr, M).minima == (A1,)
    c = fr.ctx.generator()
    cols = [fr.vec([("e", 1), ("e", 3, c)]), fr.vec([("e", 2), ("e", 4, fr.ctx.pow(c, 5))])]
    cols += [fr.e("e", i) for i in range(5, 14)]
    assert chart_of_lattice(fr, Lattice.generated(cols)).minima == (A1,)


def test_mu_to_chart_example():
    assert mu_to_chart((1, 0), 2).minima == ((2, 3),)
    assert mu_to_chart((0, 0, 0), 3).minima == ((1, 2, 3),)


@settings(max_examples=50, deadline=None)
@given(
    hd=st.sampled_from([(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)]),
    data=st.data(),
)
def test_mu_chart_round_trip(hd, data):
    h, d = hd
    mu = tuple(data.draw(st.integers(-3, 3)) for _ in range(h * d))
    chart = mu_to_chart(mu, h, d)
    back = chart_to_mu(chart)
    flat = back if d == 1 else tuple(x for c in back for x in c)
    assert flat == mu


@pytest.mark.parametrize("h,d", [(2, 1), (3, 1), (2, 2)])
def test_mu_lattice_has_chart_a_mu(h, d):
    fr = make_frame({"kind": "superbasic-res", "m": 1, "h": h, "d": d, "p": 2, "e": 2})
    rng = random.Random(h * 10 + d)
    for _ in range(10):
        mu = tuple(rng.randint(-2, 2) for _ in range(h * d))
        assert chart_of_lattice(fr, mu_lattice(fr, mu)) == mu_to_chart(mu, h, d)


def test_bad_chart():
    with pytest.raises(NotAChart):
        chart_to_mu(SemiModuleChart(2, ((1, 3),)))


def test_gamma_member_standard():
    fr = make_frame(HALF2)
    M0 = fr.standard()
    assert gamma_member(fr, M0, (0, 0))
    assert gamma_member(fr, M0, (1, INF))
    assert not gamma_member(fr, M0, (-1, 0))


def test_gamma_member_generic_closure():
    fr = make_frame(HALF2)
    g = fr.ctx.generator()
    M = dieudonne_closure(fr, fr.vec([("e11", 0), ("e12", 0, g), ("e11", 1, fr.ctx.pow(g, 3))]))
    assert not gamma_member(fr, M, (0, 1))
    assert gamma_member(fr, M, (1, 1))


def test_gamma_member_needs_large_field():
    fr = make_frame({"kind": "isoclinic-gl", "slopes": [[1, 2, 2]], "p": 2, "e": 1})
    with pytest.raises(FieldTooSmall):
        gamma_member(fr, fr.standard(), (0, 0))


@pytest.mark.parametrize("m,n", [(2, 3), (3, 5), (1, 4)])
def test_single_component_is_numerical_semigroup(m, n):
    A = agen_box(m, n, 1)
    got = {g[0] for g in A.members()}
    assert got == {x for x in range(A.B + 1) if semigroup_member(x, m, n)}


@pytest.mark.parametrize(
    "gamma,m,n,expected",
    [((0, 0), 1, 1, True), ((0, 1), 1, 1, False), ((INF, 2), 1, 1, True), ((INF, INF, 4, 4), 1, 2, True)],
)
def test_agen_characterization(gamma, m, n, expected):
    assert agen_char(gamma, m, n) == expected


def _brute_closure(m, n, l, B):
    """Fixpoint of min, +m, +n on a Python set, dropping anything leaving the box."""
    S = {(0,) * l}
    for i in range(1, l):
        for pos in itertools.combinations(range(l), i):
            if i * m * n <= B:
                S.add(tuple(INF if k in pos else i * m * n for k in range(l)))
    while True:
        new = set(S)
        for a, b in itertools.product(S, repeat=2):
            new.add(tuple(min(x, y) for x, y in zip(a, b)))
        for a in S:
            for s in (m, n):
                c = tuple(x + s for x in a)
                if all(x == INF or x <= B for x in c):
                    new.add(c)
        if new == S:
            return S
        S = new


@pytest.mark.parametrize("m,n,l,B", [(1, 1, 2, 6), (1, 2, 2, 8), (2, 1, 2, 8), (1, 1, 3, 5)])
def test_box_closure_matches_set_fixpoint(m, n, l, B):
    got = set(agen_box(m, n, l, B).members())
    assert got == _brute_closure(m, n, l, B)


@pytest.mark.parametrize("m,n,l", [(1, 1, 2), (1, 2, 2), (2, 1, 3), (2, 3, 2), (1, 1, 3)])
def test_agen_closure_equals_characterization(m, n, l):
    assert agen_box(m, n, l) == agen_char_box(m, n, l)


def test_generic_lattice_realizes_agen():
    fr = make_frame(HALF2)
    rng = random.Random(11)
    F = fr.ctx
    v = fr.vec([(c, j, rng.randrange(1, F.order)) for c in ("e11", "e12") for j in (0, 1)])
    M, _ = normalize_in_orbit(fr, dieudonne_closure(fr, v))
    assert lattice_box(fr, M, 6) == agen_box(1, 1, 2, 6)


def test_split_lattice_is_not_generic():
    fr = make_frame(HALF2)
    assert lattice_box(fr, fr.standard(), 6) != agen_box(1, 1, 2, 6)
