"""Finite quotients Lo/Hi of monomial lattices, and enumeration of stable submodules.

A lattice M with Hi ⊆ M ⊆ Lo is the same thing as a t-stable F-subspace of
Lo/Hi.  ``enumerate_submodules`` walks all subspaces stable under t and a
list of semilinear operators by adding one line at a time: every nonzero
submodule U' has a submodule U of codimension one (the operators are
nilpotent on the window), and U' = U + <v> with v in the subspace of vectors
that the operators push into U.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadSpec, WindowTooLarge
from .ffield import FieldCtx
from .lattice import Lattice
from .linalg import kernel, rref, span_key
from .series import Series

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Window:
    """Lo/Hi for diagonal lattices Lo ⊇ Hi; basis t^s e_i with lo[i] <= s < hi[i]."""

    ctx: FieldCtx
    lo: tuple
    hi: tuple

    @classmethod
    def between(cls, lo_lat: Lattice, hi_lat: Lattice) -> "Window":
        for M in (lo_lat, hi_lat):
            H = M.hnf
            if any(H[i][j].coeffs for i in range(M.h) for j in range(M.h) if i != j):
                raise BadSpec("window lattices must be diagonal")
        lo, hi = lo_lat.pivots, hi_lat.pivots
        if any(a > b for a, b in zip(lo, hi)):
            raise BadSpec("lower window lattice does not contain the upper one")
        return cls(lo_lat.ctx, tuple(lo), tuple(hi))

    @classmethod
    def standard(cls, ctx, h, lo: int, hi: int) -> "Window":
        return cls(ctx, (lo,) * h, (hi,) * h)

    @property
    def h(self):
        return len(self.lo)

    @property
    def slots(self):
        out = []
        for i in range(self.h):
            for s in range(self.lo[i], self.hi[i]):
                out.append((i, s))
        return out

    @property
    def dim(self):
        return sum(b - a for a, b in zip(self.lo, self.hi))

    def _index(self):
        return {slot: n for n, slot in enumerate(self.slots)}

    def to_vec(self, v) -> list:
        idx = self._index()
        out = [0] * self.dim
        for i, s in enumerate(v):
            if s.prec is not None and s.prec < self.hi[i]:
                raise BadSpec("vector not known modulo the window")
            for k, c in s.terms().items():
                if k < self.lo[i]:
                    raise BadSpec("vector leaves the window")
                if k < self.hi[i]:
                    out[idx[(i, k)]] = c
        return out

    def from_vec(self, x) -> list:
        terms = [dict() for _ in range(self.h)]
        for (i, s), c in zip(self.slots, x):
            if c:
                terms[i][s] = c
        return [Series.from_dict(self.ctx, d) for d in terms]

    def basis_vector(self, n: int):
        i, s = self.slots[n]
        v = [Series.zero(self.ctx)] * self.h
        v[i] = Series.t(self.ctx, s)
        return v

    def lattice(self, rows) -> Lattice:
        """U + Hi as a lattice."""
        cols = [self.from_vec(r) for r in rows]
        zero = Series.zero(self.ctx)
        for i in range(self.h):
            cols.append([Series.t(self.ctx, self.hi[i]) if j == i else zero for j in range(self.h)])
        return Lattice.span(cols, max(self.hi))

    def subspace(self, M: Lattice):
        """M / Hi as a subspace (requires Hi ⊆ M ⊆ Lo)."""
        rows = []
        top = max(self.hi)
        for c in M.columns():
            for k in range(0, top - min(self.lo) + 1):
                v = [s.shift(k) for s in c]
                x = self.to_vec(v)
                if any(x):
                    rows.append(x)
        R, _ = rref(self.ctx, rows)
        return R

    def operator(self, op, sigma: int = 0) -> "WindowOp":
        """Matrix (rows = images of basis vectors) of a sigma^sigma-semilinear op on the window."""
        images = [self.to_vec(op(self.basis_vector(n))) for n in range(self.dim)]
        return WindowOp(tuple(tuple(r) for r in images), sigma)

    def t_operator(self) -> "WindowOp":
        return self.operator(lambda v: [s.shift(1) for s in v])


@dataclass(frozen=True)
class WindowOp:
    images: tuple  # images[n] = window vector of op(basis n)
    sigma: int

    def apply(self, F, x):
        out = [0] * len(self.images[0]) if self.images else []
        for c, img in zip(x, self.images):
            if c:
                c2 = F.frobenius(c, self.sigma) if self.sigma else c
                for j, y in enumerate(img):
                    if y:
                        out[j] = F.add(out[j], F.mul(c2, y))
        return out


def _reduce(F, R, piv, x):
    x = list(x)
    for r, c in zip(R, piv):
        if x[c]:
            f = x[c]
            x = [F.sub(a, F.mul(f, b)) for a, b in zip(x, r)]
    return x


def _preimage(F, op: WindowOp, R, piv, dim):
    """{x : op(x) in span(R)} as a list of basis rows."""
    # op(x) = sum sigma^s(x_n) img_n; linear in y = sigma^s(x)
    reduced = [_reduce(F, R, piv, img) for img in op.images]
    cols = [list(c) for c in zip(*reduced)] if reduced else []
    K = kernel(F, cols, dim) if cols else [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    if op.sigma:
        K = [[F.frobenius(c, -op.sigma) for c in y] for y in K]
    return K


def _intersect_all(F, spaces, dim):
    from .linalg import intersect_spaces

    cur = None
    for S in spaces:
        cur = rref(F, S)[0] if cur is None else intersect_spaces(F, cur, S, dim)
    return cur if cur is not None else [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]


def _projective_points(F, basis, scalars):
    """Representatives of lines in span(basis) with coefficients in ``scalars``."""
    r = len(basis)
    for lead in range(r):
        # first nonzero coordinate = lead, equal to 1
        def rec(pos, acc):
            if pos == r:
                yield acc
                return
            for a in scalars:
                if a == 0:
                    yield from rec(pos + 1, acc)
                else:
                    yield from rec(pos + 1, [F.add(x, F.mul(a, y)) for x, y in zip(acc, basis[pos])])

        yield from rec(lead + 1, list(basis[lead]))


def enumerate_submodules(window: Window, ops, scalars=None, budget: int = DEFAULT_BUDGET, predicate=None):
    """All subspaces of the window stable under t and ``ops``, as canonical RREF keys.

    ``scalars`` restricts to subspaces defined over a subfield (its element list).
    ``predicate(rows)`` may prune: it must be inherited by submodules.
    """
    F = window.ctx
    dim = window.dim
    ops = [window.t_operator()] + list(ops)
    if scalars is None:
        scalars = list(F.elements())
    start = ()
    seen = {start}
    frontier = [start]
    examined = 0
    while frontier:
        nxt = []
        for key in frontier:
            R = [list(r) for r in key]
            R, piv = rref(F, R) if R else ([], [])
            S = _intersect_all(F, [_preimage(F, op, R, piv, dim) for op in ops], dim)
            # complement of span(R) inside S
            comp = []
            cur = [list(r) for r in R]
            for s in S:
                red = _reduce(F, *rref(F, cur), s) if cur else s
                if any(red):
                    comp.append(red)
                    cur.append(red)
            comp = rref(F, comp)[0] if comp else []
            for v in _projective_points(F, comp, scalars):
                examined += 1
                if examined > budget:
                    raise WindowTooLarge(f"more than {budget} candidate subspaces")
                new = span_key(F, R + [v])
                if new in seen:
                    continue
                if predicate is not None and not predicate(new):
                    continue
                seen.add(new)
                nxt.append(new)
        frontier = nxt
    return sorted(seen, key=lambda k: (len(k), k))
