import random

import pytest
from hypothesis import given, settings, strategies as st

from jstrata.casestudies.gsp4 import line_anchor, line_member
from jstrata.isocrystal import dieudonne_closure, make_frame
from jstrata.jprobe import (
    f_profile,
    lattice_label,
    normalize_in_orbit,
    pi_power,
    probe_set,
    same_stratum,
)
from jstrata.lattice import Cochar, contains
from jstrata.randgen import iwahori_translate, random_mu
from jstrata.semimodule import mu_lattice

GL2 = {"kind": "superbasic-res", "m": 1, "h": 2, "p": 2, "e": 2}


def test_superbasic_probes_are_pi_powers():
    fr = make_frame(GL2)
    ps = probe_set(fr, 1)
    assert sorted(P.volume() for _, P in ps) == [-1, 0, 1]
    assert {lattice_label(pi_power(fr, l)) for l in (-1, 0, 1)} == set(ps.labels())


@pytest.mark.parametrize("spec", [GL2, {"kind": "gsp4", "p": 2, "e": 2}])
def test_window_zero_is_standard_alone(spec):
    fr = make_frame(spec)
    ps = probe_set(fr, 0)
    assert len(ps) == 1 and ps.probes[0][1] == fr.standard()


@pytest.mark.parametrize("h,m", [(2, 1), (3, 1), (3, 2), (5, 2)])
def test_pi_to_the_h_is_eps(h, m):
    fr = make_frame({"kind": "superbasic-res", "m": m, "h": h, "p": 2, "e": 2})
    assert pi_power(fr, h) == fr.standard().scale(1)
    assert pi_power(fr, 1).volume() == 1


def test_gl2_entry_at_pi_lattice():
    fr = make_frame(GL2)
    assert fr.inv(pi_power(fr, 1), fr.standard()) == Cochar((0, -1))
    ps = probe_set(fr, 1)
    prof = f_profile(fr, fr.standard(), ps).as_dict()
    assert prof[lattice_label(fr.standard())] == Cochar((0, 0))


def test_same_stratum():
    fr = make_frame(GL2)
    ps = probe_set(fr, 1)
    M = fr.standard()
    assert same_stratum(fr, M, M, ps)
    assert not same_stratum(fr, M, pi_power(fr, 1), ps)


def test_gsp4_probes_contain_anchor_and_standard():
    fr = make_frame({"kind": "gsp4", "p": 2, "e": 2})
    ps = probe_set(fr, 1)
    assert ps.find(fr.standard()) is not None
    assert ps.find(line_anchor(fr)) is not None
    assert len(ps) == 565


def test_gsp4_line_member_entry():
    fr = make_frame({"kind": "gsp4", "p": 2, "e": 4})
    F = fr.ctx
    x = next(a for a in F.nonzero() if F.frobenius(a, 2) != a)
    M = line_member(fr, x)
    A = line_anchor(fr)
    # at the rational points below the anchor the entry is the minimal value
    rational = line_member(fr, 1)
    assert fr.inv(rational, M) == Cochar((1, 0, 0, -1))
    assert contains(A, M)


@pytest.mark.parametrize("l", [-2, 0, 1, 3])
def test_normalize_pi_powers(l):
    fr = make_frame(GL2)
    M, k = normalize_in_orbit(fr, pi_power(fr, l))
    assert (M, k) == (fr.standard(), l)


def test_normalize_isoclinic_closure():
    fr = make_frame({"kind": "isoclinic-gl", "slopes": [[1, 2, 2]], "p": 2, "e": 4})
    g = fr.ctx.generator()
    M = dieudonne_closure(fr, fr.vec([("e11", 0), ("e12", 1, g)]))
    Mn, _ = normalize_in_orbit(fr, M)
    assert contains(fr.standard(), Mn)
    ps = probe_set(fr, 2)
    assert not any(contains(P, Mn) for _, P in ps if P.volume() > 0)


SUPERBASIC = [(2, 1, 1), (3, 1, 1), (3, 2, 1), (2, 1, 2)]


@pytest.mark.parametrize("h,m,d", SUPERBASIC)
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_profile_depends_only_on_mu(h, m, d, seed):
    rng = random.Random(seed)
    fr = make_frame({"kind": "superbasic-res", "m": m, "h": h, "d": d, "p": 2, "e": 2})
    mu = random_mu(rng, h * d)
    E = mu_lattice(fr, mu)
    M = iwahori_translate(rng, E, h, d)
    for l in range(-h, h + 1):
        P = pi_power(fr, l)
        assert fr.inv(P, M) == fr.inv(P, E)
