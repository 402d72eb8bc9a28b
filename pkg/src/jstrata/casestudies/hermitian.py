"""Hermitian point counts Θ_m, Ψ_m and the τ-closure invariant (Λ, d) for unitary (1, n-1)."""

from __future__ import annotations

import itertools

from ..errors import BudgetExceeded, NonTerminating, NotVertexChain
from ..ffield import field
from ..isocrystal import Frame
from ..lattice import Lattice, contains, dual, lattice_sum


def hermitian_count(p: int, m: int, budget: int = 10 ** 7) -> int:
    """#{x in P^{m-1}(F_{p^2}) : x_1^{p+1} + ... + x_m^{p+1} = 0}, by enumeration."""
    if m < 1:
        raise ValueError("m must be positive")
    F = field(p, 1, 2)
    if F.order ** (m - 1) > budget:
        raise BudgetExceeded(f"{F.order}^{m - 1} points exceed the budget")
    norm = [F.pow(x, p + 1) for x in range(F.order)]
    count = 0
    for lead in range(m):
        # first nonzero coordinate is 1
        for tail in itertools.product(range(F.order), repeat=m - 1 - lead):
            s = 1
            for x in tail:
                s = F.add(s, norm[x])
            count += s == 0
    return count


def theta_closed(p: int, m: int) -> int:
    num = (p ** m - (-1) ** m) * (p ** (m - 1) + (-1) ** m)
    q, r = divmod(num, p * p - 1)
    assert r == 0
    return q


def theta_rec(p: int, m: int) -> int:
    th = 0  # Θ_1: a single coordinate has no nonzero solution
    for k in range(2, m + 1):
        th = (p + 1) * (p ** (2 * k - 2) - 1) // (p * p - 1) - p * th
    return th


def psi(p: int, m: int) -> int:
    return (p ** (2 * m - 2) - 1) // (p * p - 1)


def theta_psi(p: int, m: int) -> tuple:
    if m < 2:
        raise ValueError("m must be at least 2")
    return theta_closed(p, m), theta_rec(p, m), psi(p, m)


# ---------------------------------------------------------------------------
# τ-closure


def _index(big: Lattice, small: Lattice):
    """[big : small] if small ⊆ big, else None."""
    if not contains(big, small):
        return None
    return small.volume() - big.volume()


def chain_offset(fr: Frame, M0: Lattice):
    """i with eps^{i+1} M0^v ⊂^1 M0 ⊂^{n-1} eps^i M0^v, or None."""
    D = dual(M0, fr.form)
    n = M0.h
    k, r = divmod(M0.volume() - D.volume() - (n - 1), n)
    # vol(M0) - vol(eps^i D) = n-1 forces i = k
    if r:
        return None
    i = k
    if _index(M0, D.scale(i + 1)) == 1 and _index(D.scale(i), M0) == n - 1:
        return i
    return None


def vertex_type(fr: Frame, L: Lattice):
    """(j, i) with eps^i L^v ⊂^j L ⊂^{n-j} eps^{i-1} L^v and j odd, or None."""
    D = dual(L, fr.form)
    n = L.h
    for i in range(-2 * n - abs(L.volume()), 2 * n + abs(L.volume()) + 1):
        a, b = _index(L, D.scale(i)), _index(D.scale(i - 1), L)
        if a is not None and b is not None and a + b == n and a % 2 == 1:
            return a, i
    return None


def vw_tau_closure(fr: Frame, M0: Lattice):
    """(Λ, d): Λ = M0 + τM0 + ... + τ^d M0 with d minimal so that Λ is τ-stable."""
    n = M0.h
    i = chain_offset(fr, M0)
    if i is None:
        raise NotVertexChain("lattice does not satisfy the signature (1, n-1) chain")
    L = M0
    cur = M0
    d = 0
    while True:
        cur = fr.image(cur, fr.tau)
        nxt = lattice_sum(L, cur)
        if nxt == L:
            break
        d += 1
        if 2 * d + 1 > n:
            raise NonTerminating(f"closure still growing at d={d}")
        if nxt.volume() != M0.volume() - d:
            raise NonTerminating("closure volume does not drop by one per step")
        L = nxt
    D = dual(L, fr.form)
    # eps^{i+1} L^v ⊂^{2d+1} L ⊂^{n-2d-1} eps^i L^v
    if _index(L, D.scale(i + 1)) != 2 * d + 1 or _index(D.scale(i), L) != n - 2 * d - 1:
        raise NonTerminating("closure does not have the expected vertex type")
    return L, d


def self_dual_plane(fr: Frame, delta: int):
    """Columns of <eps^{-1}(g1 + delta g2), g2> (self-dual when delta^{q+1} = -1)."""
    F = fr.ctx
    u = fr.vec([("g1", -1), ("g2", -1, delta)])
    return [u, fr.e("g2", 0)]


def norm_minus_one(fr: Frame) -> int:
    F = fr.ctx
    minus1 = F.neg(1)
    for x in F.nonzero():
        if F.mul(x, F.frobenius(x, 1)) == minus1:
            return x
    raise ValueError("no element of norm -1")


def type3_lattice(fr: Frame) -> Lattice:
    """P ⊕ <g3..gn>: a τ-stable lattice of vertex type 3 (n >= 3)."""
    n = fr.h_total
    cols = self_dual_plane(fr, norm_minus_one(fr))
    cols += [fr.e(f"g{k}", 0) for k in range(3, n + 1)]
    return Lattice.generated(cols)


def isotropic_m0(fr: Frame, rational: bool = False) -> Lattice:
    """A lattice M0 with chain offset 0 inside the type-3 lattice, from an isotropic line ℓ.

    The residue space Λ/εΛ^v has basis (ε^{-1}u, g2, gn); M0 is the preimage of ℓ^⊥.
    rational=False picks ℓ not defined over F_{q^2}, which gives d = 1.
    """
    F = fr.ctx
    n = fr.h_total
    Lam = type3_lattice(fr)
    delta = norm_minus_one(fr)
    basis = self_dual_plane(fr, delta) + [fr.e(f"g{n}", 0)]

    def comb(c):
        out = fr.zero()
        for a, v in zip(c, basis):
            if a:
                out = [x + y.scale(a) for x, y in zip(out, v)]
        return out

    def res_pair(x, y):
        return fr.form.pair(x, y).coeff(0)

    G = [[res_pair(a, b) for b in basis] for a in basis]

    def form(c, d):
        acc = 0
        for i in range(3):
            for j in range(3):
                if c[i] and d[j] and G[i][j]:
                    acc = F.add(acc, F.mul(F.mul(c[i], G[i][j]), F.frobenius(d[j], 1)))
        return acc

    def is_rational(c):
        return all(F.frobenius(x, 2) == x for x in c)

    ell = None
    for b, c in itertools.product(list(F.elements()), repeat=2):
        vec = (1, b, c)
        if form(vec, vec) == 0 and is_rational(vec) == rational:
            ell = vec
            break
    if ell is None:
        raise ValueError("no isotropic line of the requested kind; enlarge the field")
    # ℓ^⊥ inside the residue space: solve form(y, ell) = 0, a σ^0-linear condition in y
    row = [0, 0, 0]
    for i in range(3):
        for j in range(3):
            if G[i][j] and ell[j]:
                row[i] = F.add(row[i], F.mul(G[i][j], F.frobenius(ell[j], 1)))
    from ..linalg import kernel

    perp = kernel(F, [row], 3)
    D = dual(Lam, fr.form)
    gens = [comb(v) for v in perp] + D.scale(1).columns()
    return Lattice.generated(gens)


def vw_report(n: int = 3, p: int = 2, e: int = 6) -> dict:
    from ..isocrystal import make_frame

    fr = make_frame({"kind": "unitary-n0", "n": n, "p": p, "e": e})
    L0 = fr.standard()
    out = {"n": n, "p": p, "e": e}
    _, d0 = vw_tau_closure(fr, L0)
    out["standard_d"] = d0
    if n >= 3:
        for kind, rational in (("rational_line", True), ("generic_line", False)):
            M0 = isotropic_m0(fr, rational)
            L, d = vw_tau_closure(fr, M0)
            out[kind] = {
                "d": d,
                "vol_M0": M0.volume(),
                "vol_closure": L.volume(),
                "volume_law": L.volume() == M0.volume() - d,
                "closure_type": list(vertex_type(fr, L) or ()),
            }
    return out
