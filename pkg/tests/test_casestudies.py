import random

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.casestudies import gelfand_serganova as gs
from jstrata.casestudies.gsp4 import (
    gsp4_classify,
    gsp4_frame,
    in_gsp4_adlv,
    is_line_anchor,
    line_anchor,
    line_member,
)
from jstrata.casestudies.hermitian import (
    hermitian_count,
    isotropic_m0,
    psi,
    theta_closed,
    theta_psi,
    theta_rec,
    vertex_type,
    vw_report,
    vw_tau_closure,
)
from jstrata.casestudies.mpoly import MPoly, coefficient_rank, det
from jstrata.errors import BudgetExceeded, NotInADLV
from jstrata.isocrystal import make_frame
from jstrata.jprobe import lattice_label

NAMES = ("x", "y", "z")
P = 5


def polys():
    term = st.tuples(st.tuples(*(st.integers(0, 2) for _ in NAMES)), st.integers(1, P - 1))
    return st.lists(term, max_size=4).map(lambda ts: MPoly.from_dict(P, NAMES, dict(ts)))


def evaluate(f, point):
    total = 0
    for exps, c in f.terms:
        v = c
        for x, k in zip(point, exps):
            v *= x ** k
        total += v
    return total % P


@settings(max_examples=60, deadline=None)
@given(a=polys(), b=polys(), pt=st.tuples(*(st.integers(0, P - 1) for _ in NAMES)))
def test_polynomial_arithmetic_matches_evaluation(a, b, pt):
    assert evaluate(a + b, pt) == (evaluate(a, pt) + evaluate(b, pt)) % P
    assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt) % P
    assert evaluate(a - b, pt) == (evaluate(a, pt) - evaluate(b, pt)) % P
    sub = a.subs("x", pt[0])
    assert evaluate(sub, pt) == evaluate(a, pt)


def test_det_and_rank():
    x, y = MPoly.var(P, NAMES, "x"), MPoly.var(P, NAMES, "y")
    one = MPoly.const(P, NAMES, 1)
    assert det([[x, y], [one, one]]) == x - y
    assert coefficient_rank([x, y, x + y], P) == 2
    assert coefficient_rank([x, x * 2], P) == 1


@pytest.fixture(scope="module")
def minor_report():
    return gs.gs_minor_lists()


def test_minor_list_counts(minor_report):
    r = minor_report
    assert (r["L_A1"], r["L_A0"], r["L_B"]) == (29, 17, 17)
    assert r["ranks"] == [29, 17, 17]
    assert r["lists_equal"]


def test_vanishing_minors_are_figure_lines(minor_report):
    lines = {tuple(t) for t in gs.collinear_triples()}
    assert {tuple(t) for t in minor_report["vanishing_A1"]} == lines
    assert len(lines) == 6


def test_characteristic_two_is_degenerate():
    # over F_2 the seven points form the Fano plane and one more minor vanishes
    r = gs.gs_minor_lists(2)
    assert r["L_A1"] == 28


def test_cauchy_binet_identity_matrix():
    A = gs.matrix_a(2)
    ident = [[int(i == j) for j in range(7)] for i in range(7)]
    for J in gs.TRIPLES[:10]:
        lhs, rhs = gs.cauchy_binet(A, ident, J)
        assert lhs == rhs


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cauchy_binet_random(seed):
    A = gs.matrix_a(2)
    phi = gs.random_phi(random.Random(seed))
    for J in gs.TRIPLES[::5]:
        lhs, rhs = gs.cauchy_binet(A, phi, J)
        assert lhs == rhs


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2)])
def test_hermitian_counts(p, m):
    assert hermitian_count(p, m) == theta_closed(p, m)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_theta_recursion_and_bound(p):
    assert theta_closed(p, 2) == p + 1
    for m in range(2, 13):
        assert theta_rec(p, m) == theta_closed(p, m)
        assert theta_closed(p, m) > psi(p, m)


def test_theta_psi_example():
    assert theta_psi(2, 3) == (9, 9, 5)


def test_hermitian_budget():
    with pytest.raises(BudgetExceeded):
        hermitian_count(3, 4, budget=10)


def test_vw_generic_and_rational_lines():
    rep = vw_report(3)
    assert rep["standard_d"] == 0
    assert rep["rational_line"]["d"] == 0 and rep["rational_line"]["closure_type"] == [1, 1]
    assert rep["generic_line"]["d"] == 1 and rep["generic_line"]["closure_type"] == [3, 1]
    assert rep["generic_line"]["volume_law"]


@pytest.mark.parametrize("n", [4, 5])
def test_vw_volume_law_higher_rank(n):
    fr = make_frame({"kind": "unitary-n0", "n": n, "p": 2, "e": 6})
    M0 = isotropic_m0(fr)
    L, d = vw_tau_closure(fr, M0)
    assert d == 1 and L.volume() == M0.volume() - d
    assert vertex_type(fr, L)[0] == 3


@pytest.fixture(scope="module")
def gsp4_e4():
    return gsp4_frame(2, 4)


def test_gsp4_points_and_lines(gsp4_e4):
    fr = gsp4_e4
    F = fr.ctx
    anchor = line_anchor(fr)
    assert is_line_anchor(fr, anchor)
    for x in F.nonzero():
        M = line_member(fr, x)
        assert in_gsp4_adlv(fr, M)
        d = gsp4_classify(fr, M)
        if F.frobenius(x, 2) == x:
            assert d.kind == "point"
        else:
            assert d.kind == "line" and d.anchor == lattice_label(anchor)


def test_gsp4_rejects_non_members(gsp4_e4):
    fr = gsp4_e4
    with pytest.raises(NotInADLV):
        gsp4_classify(fr, line_anchor(fr))
