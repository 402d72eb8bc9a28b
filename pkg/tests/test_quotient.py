import itertools

import pytest

from jstrata.errors import BadSpec
from jstrata.ffield import field
from jstrata.isocrystal import is_dieudonne, make_frame
from jstrata.lattice import Lattice
from jstrata.quotient import Window, enumerate_submodules


def brute_lattices(W):
    """Every lattice between the window ends, from all small generating sets of window vectors."""
    vecs = [x for x in itertools.product(range(W.ctx.order), repeat=W.dim) if any(x)]
    out = {W.lattice([])}
    for k in range(1, W.dim + 1):
        for rows in itertools.combinations(vecs, k):
            out.add(W.lattice(list(rows)))
    return out


@pytest.mark.parametrize("h,lo,hi", [(1, 0, 2), (2, 0, 1), (2, -1, 1), (1, -1, 2)])
def test_t_stable_subspaces_match_brute_force(h, lo, hi):
    W = Window.standard(field(2), h, lo, hi)
    got = {W.lattice(k) for k in enumerate_submodules(W, [])}
    assert got == brute_lattices(W)


def test_dieudonne_submodules_match_brute_force():
    fr = make_frame({"kind": "isoclinic-gl", "slopes": [[1, 2, 1]], "p": 2, "e": 1})
    W = Window.standard(fr.ctx, 2, -1, 1)
    ops = [W.operator(fr.phi, 1), W.operator(fr.V, -1)]
    got = {W.lattice(k) for k in enumerate_submodules(W, ops)}
    want = {M for M in brute_lattices(W) if is_dieudonne(fr, M)}
    assert got == want and fr.standard() in got


def test_subspace_round_trip():
    F = field(3)
    W = Window.standard(F, 2, -1, 2)
    for k in list(enumerate_submodules(W, []))[:30]:
        M = W.lattice(k)
        assert W.lattice(W.subspace(M)) == M


def test_vector_outside_window():
    F = field(2)
    W = Window.standard(F, 1, 0, 1)
    with pytest.raises(BadSpec):
        W.to_vec([W.basis_vector(0)[0].shift(-1)])


def test_window_between_needs_diagonal():
    F = field(2)
    lo, hi = Lattice.standard(F, 2, 0), Lattice.standard(F, 2, 1)
    assert Window.between(lo, hi).dim == 2
    with pytest.raises(BadSpec):
        Window.between(hi, lo)
