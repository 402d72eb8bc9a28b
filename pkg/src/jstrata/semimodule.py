"""Start indices, weak EL-charts, multi-semimodules and A_gen."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import FieldTooSmall, NotAChart, PrecisionExceeded
from .isocrystal import Frame, restrict
from .lattice import Lattice, intersect
from .linalg import rref
from .quotient import Window
from .series import Series

INF = math.inf


def start_gamma(fr: Frame, v) -> tuple:
    """Per chain, the least basis index with a nonzero coefficient (inf if none)."""
    out = []
    for n, ch in enumerate(fr.chains):
        best = INF
        unknown = INF  # first index whose coefficient is not known
        for r in range(ch.length):
            s = v[ch.offset + r]
            for k in s.terms():
                best = min(best, ch.base + r + k * ch.length)
            if s.prec is not None:
                unknown = min(unknown, ch.base + r + s.prec * ch.length)
        if unknown <= best and unknown != INF:
            raise PrecisionExceeded("start index not certified")
        out.append(best)
    return tuple(out)


@dataclass(frozen=True)
class SemiModuleChart:
    """Per component: the minimal chart element in each residue class mod h."""

    h: int
    minima: tuple  # one sorted tuple of h integers per component

    def contains(self, comp: int, i: int) -> bool:
        return any(i >= a and (i - a) % self.h == 0 for a in self.minima[comp])

    def elements(self, comp: int, upto: int):
        return [i for i in range(min(self.minima[comp]), upto + 1) if self.contains(comp, i)]

    def shift(self, k: int) -> "SemiModuleChart":
        return SemiModuleChart(self.h, tuple(tuple(a + k for a in comp) for comp in self.minima))


def _component_chart(fr: Frame, M: Lattice, c: int) -> tuple:
    """Residue-class minima of the start indices of the chain-c component (M must decompose)."""
    ch = fr.chains[c]
    coords = list(range(ch.offset, ch.offset + ch.length))
    Mc = restrict(M, coords) if len(fr.chains) > 1 else M
    top, bottom = Mc.floor, Mc.ceiling
    W = Window.standard(fr.ctx, ch.length, bottom, top)
    rows = W.subspace(Mc)
    # order window slots by basis index so that RREF pivots are leading indices
    slots = W.slots
    index = [ch.base + i + s * ch.length for i, s in slots]
    order = sorted(range(len(slots)), key=lambda n: index[n])
    R, piv = rref(fr.ctx, [[r[n] for n in order] for r in rows])
    leads = {index[order[p]] for p in piv}
    # everything from base + top*L on is in the chart
    for i in range(ch.base + top * ch.length, ch.base + top * ch.length + ch.length):
        leads.add(i)
    minima = {}
    for i in sorted(leads):
        minima.setdefault(i % ch.length, i)
    if len(minima) != ch.length:
        raise NotAChart("chart is missing a residue class")
    return tuple(sorted(minima.values()))


def chart_of_lattice(fr: Frame, M: Lattice) -> SemiModuleChart:
    lens = {ch.length for ch in fr.chains}
    if len(lens) != 1:
        raise NotAChart("components of different lengths")
    return SemiModuleChart(lens.pop(), tuple(_component_chart(fr, M, c) for c in range(len(fr.chains))))


def mu_to_chart(mu, h: int, d: int = 1) -> SemiModuleChart:
    """A^mu with A^mu_tau = {i + mu_{i,tau} h + N h : 1 <= i <= h}; mu given per component."""
    comps = _mu_components(mu, h, d)
    return SemiModuleChart(h, tuple(tuple(sorted(i + 1 + x * h for i, x in enumerate(c))) for c in comps))


def _mu_components(mu, h, d):
    mu = list(mu)
    if d == 1 and len(mu) == h and all(isinstance(x, int) for x in mu):
        return [mu]
    if len(mu) == d and all(len(c) == h for c in mu):
        return [list(c) for c in mu]
    if len(mu) == h * d:
        return [mu[k * h:(k + 1) * h] for k in range(d)]
    raise ValueError("mu has the wrong shape")


def chart_to_mu(chart: SemiModuleChart):
    h = chart.h
    out = []
    for comp in chart.minima:
        mu = [None] * h
        for a in comp:
            i = (a - 1) % h + 1
            if mu[i - 1] is not None:
                raise NotAChart("two minima in one residue class")
            mu[i - 1] = (a - i) // h
        if None in mu:
            raise NotAChart("missing residue class")
        out.append(tuple(mu))
    return out[0] if len(out) == 1 else tuple(out)


def mu_lattice(fr: Frame, mu) -> Lattice:
    """eps^mu Λ0 (diagonal), whose chart is A^mu."""
    h = fr.chains[0].length
    comps = _mu_components(mu, h, len(fr.chains))
    F = fr.ctx
    diag = [x for c in comps for x in c]
    n = len(diag)
    zero = Series.zero(F)
    return Lattice([[Series.t(F, diag[i]) if i == j else zero for j in range(n)] for i in range(n)], _hnf=True)


# ---------------------------------------------------------------------------
# gamma membership via volumes


def _finite_part(fr: Frame, M: Lattice, chains):
    """M ∩ (span of the given chains), as a lattice in those coordinates."""
    coords = [i for c in chains for i in range(fr.chains[c].offset, fr.chains[c].offset + fr.chains[c].length)]
    if len(coords) == M.h:
        return M, coords
    rest = [i for i in range(M.h) if i not in coords]
    perm = coords + rest
    B = M.basis
    P = Lattice([B[i] for i in perm])
    k = len(coords)
    return Lattice([[P.hnf[i][j] for j in range(k)] for i in range(k)], _hnf=True), coords


def _gamma_lattice(fr: Frame, chains, gamma, F):
    diag = []
    for c in chains:
        ch = fr.chains[c]
        g = gamma[c]
        for r in range(ch.length):
            diag.append(-((ch.base + r - g) // ch.length))  # least q with base+r+qL >= g
    n = len(diag)
    zero = Series.zero(F)
    return Lattice([[Series.t(F, diag[i]) if i == j else zero for j in range(n)] for i in range(n)], _hnf=True)


def gamma_member(fr: Frame, M: Lattice, gamma) -> bool:
    """Is gamma the start-index vector of some nonzero v in M?"""
    gamma = tuple(gamma)
    finite = [c for c, g in enumerate(gamma) if g != INF]
    if not finite:
        return False
    if fr.ctx.order <= len(finite):
        raise FieldTooSmall(f"need more than {len(finite)} field elements")
    Mf, _ = _finite_part(fr, M, finite)
    X = intersect(Mf, _gamma_lattice(fr, finite, gamma, fr.ctx))
    vx = X.volume()
    for c in finite:
        g2 = list(gamma)
        g2[c] += 1
        Y = intersect(Mf, _gamma_lattice(fr, finite, g2, fr.ctx))
        if Y.volume() == vx:
            return False
    return True


# ---------------------------------------------------------------------------
# boxed multi-semimodules


@dataclass
class BoxedMultiSemiModule:
    m: int
    n: int
    l: int
    B: int
    table: np.ndarray  # bool, shape (B+2,)*l; index B+1 stands for infinity

    def __contains__(self, gamma):
        return bool(self.table[self.index(gamma)])

    def index(self, gamma):
        return tuple(self.B + 1 if g == INF else int(g) for g in gamma)

    def members(self):
        out = []
        for idx in zip(*np.nonzero(self.table)):
            out.append(tuple(INF if i == self.B + 1 else int(i) for i in idx))
        return sorted(out, key=lambda g: tuple(float(x) for x in g))

    def __eq__(self, other):
        return isinstance(other, BoxedMultiSemiModule) and self.B == other.B and np.array_equal(self.table, other.table)


def box_points(l: int, B: int):
    vals = list(range(B + 1)) + [INF]
    for g in itertools.product(vals, repeat=l):
        if any(x != INF for x in g):
            yield g


def _shift(A: np.ndarray, s: int, B: int) -> np.ndarray:
    l = A.ndim
    out = np.zeros_like(A)
    if s > B:
        return out
    for pattern in itertools.product([False, True], repeat=l):
        if all(pattern):
            continue
        src, dst = [], []
        for inf in pattern:
            if inf:
                src.append(slice(B + 1, B + 2))
                dst.append(slice(B + 1, B + 2))
            else:
                src.append(slice(0, B + 1 - s))
                dst.append(slice(s, B + 1))
        out[tuple(dst)] |= A[tuple(src)]
    return out


def _min_closure(A: np.ndarray) -> np.ndarray:
    l = A.ndim
    ok = np.ones_like(A)
    for i in range(l):
        U = A.copy()
        for j in range(l):
            if j != i:
                U = np.flip(np.logical_or.accumulate(np.flip(U, axis=j), axis=j), axis=j)
        # condition only where coordinate i is finite
        cond = U.copy()
        idx = [slice(None)] * l
        idx[i] = -1
        cond[tuple(idx)] = True
        ok &= cond
    allinf = tuple([-1] * l)
    ok[allinf] = False
    return ok


def closure(A: np.ndarray, m: int, n: int, B: int) -> np.ndarray:
    while True:
        nxt = A | _shift(A, m, B) | _shift(A, n, B)
        nxt = _min_closure(nxt)
        if np.array_equal(nxt, A):
            return A
        A = nxt


def agen_box(m: int, n: int, l: int, B: int | None = None) -> BoxedMultiSemiModule:
    """The box-truncation of the multi-semimodule generated by 0 and the S_l-orbits of (inf^i, (imn)^{l-i})."""
    if B is None:
        B = 3 * m * n * l
    A = np.zeros((B + 2,) * l, dtype=bool)
    A[(0,) * l] = True
    for i in range(1, l):
        v = i * m * n
        if v > B:
            continue
        for pos in itertools.combinations(range(l), i):
            A[tuple(B + 1 if k in pos else v for k in range(l))] = True
    return BoxedMultiSemiModule(m, n, l, B, closure(A, m, n, B))


def semigroup_member(x: int, m: int, n: int) -> bool:
    """x in mN + nN."""
    if x < 0:
        return False
    return any((x - a * m) % n == 0 for a in range(x // m + 1))


def agen_char(gamma, m: int, n: int) -> bool:
    gamma = tuple(gamma)
    if all(g == INF for g in gamma):
        return False
    for g in gamma:
        if g == INF:
            continue
        c = sum(1 for x in gamma if x > g)
        if not semigroup_member(g - c * m * n, m, n):
            return False
    return True


def agen_char_box(m: int, n: int, l: int, B: int | None = None) -> BoxedMultiSemiModule:
    if B is None:
        B = 3 * m * n * l
    A = np.zeros((B + 2,) * l, dtype=bool)
    for g in box_points(l, B):
        if agen_char(g, m, n):
            A[tuple(B + 1 if x == INF else x for x in g)] = True
    return BoxedMultiSemiModule(m, n, l, B, A)


def lattice_box(fr: Frame, M: Lattice, B: int) -> BoxedMultiSemiModule:
    """Box-truncated A(M) for an isoclinic frame."""
    m, h, l = fr.slopes[0]
    A = np.zeros((B + 2,) * l, dtype=bool)
    for g in box_points(l, B):
        if gamma_member(fr, M, g):
            A[tuple(B + 1 if x == INF else x for x in g)] = True
    return BoxedMultiSemiModule(m, h - m, l, B, A)
