"""Lattices in L^h over the valuation ring O = F_{q^e}[[t]].

Every ``Lattice`` is stored in a canonical Hermite form ``H``: upper
triangular, ``H[i][i] = t^{k_i}``, and every entry to the right of a pivot
is a Laurent polynomial with exponents ``< k_i``.  Such an ``H`` is an exact
object even when the input basis was only known to finite precision; the
conversion certifies that the input precision was enough.

Internally the elimination runs over O/t^N on plain coefficient lists, with
N chosen so that the answer is determined modulo t^N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import PrecisionExceeded, SingularMatrix
from .ffield import FieldCtx
from .series import Series

# ---------------------------------------------------------------------------
# truncated power series as coefficient lists of length N


def _tp(s: Series, a: int, N: int) -> list:
    """Coefficients of t^{-a} s at exponents 0..N-1; s must have valuation >= a."""
    if s.prec is not None and s.prec < a + N:
        raise PrecisionExceeded(f"entry known only modulo t^{s.prec}, need t^{a + N}")
    out = [0] * N
    for k, c in s.terms().items():
        j = k - a
        if j < 0:
            raise ValueError("entry below the scaling valuation")
        if j < N:
            out[j] = c
    return out


def _tval(x):
    for i, c in enumerate(x):
        if c:
            return i
    return None


def _tmul(F, x, y, N):
    out = [0] * N
    mul, add = F.mul, F.add
    for i, a in enumerate(x):
        if a:
            for j in range(N - i):
                b = y[j]
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
    return out


def _tinv(F, x, N):
    inv0 = F.inv(x[0])
    out = [inv0] + [0] * (N - 1)
    mul, add, neg = F.mul, F.add, F.neg
    for k in range(1, N):
        acc = 0
        for j in range(1, k + 1):
            if x[j] and out[k - j]:
                acc = add(acc, mul(x[j], out[k - j]))
        out[k] = neg(mul(acc, inv0))
    return out


def _taxpy(F, y, f, x, N):
    """y - f*x."""
    prod = _tmul(F, f, x, N)
    sub = F.sub
    return [sub(a, b) for a, b in zip(y, prod)]


def _from_tp(F, x, a, prec=None) -> Series:
    return Series(F, a, tuple(x), prec)


# ---------------------------------------------------------------------------
# matrix helpers on Series


def _scaling(A):
    """Least certified valuation over all entries (for inexact zeros: their prec)."""
    a = math.inf
    for row in A:
        for s in row:
            a = min(a, s.lower_val())
    return a


def _rel_prec(A, a):
    r = math.inf
    for row in A:
        for s in row:
            if s.prec is not None:
                r = min(r, s.prec - a)
    return r


def _max_deg(A, a):
    d = 0
    for row in A:
        for s in row:
            if s.coeffs:
                d = max(d, s.degree() - a)
    return d


def _nonzero(s):
    """False only for the exact zero series."""
    return bool(s.coeffs) or s.prec is not None


def identity(F: FieldCtx, h: int):
    one, zero = Series.one(F), Series.zero(F)
    return [[one if i == j else zero for j in range(h)] for i in range(h)]


def mat_mul(A, B):
    F = A[0][0].ctx
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = Series.zero(F)
            for l in range(m):
                if _nonzero(A[i][l]) and _nonzero(B[l][j]):
                    acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    return [r[0] for r in mat_mul(A, [[x] for x in v])]


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_sigma(A, k):
    return [[s.sigma(k) for s in row] for row in A]


def columns(A):
    return [list(c) for c in zip(*A)]


def from_columns(cols):
    return [list(r) for r in zip(*cols)]


def mat_inverse(A, prec: int = 64):
    """Inverse over L by Gauss-Jordan with minimal-valuation pivots."""
    h = len(A)
    F = A[0][0].ctx
    M = [list(r) + [Series.one(F) if i == j else Series.zero(F) for j in range(h)] for i, r in enumerate(A)]
    for c in range(h):
        best = None
        for r in range(c, h):
            v = M[r][c].valuation()
            if v != math.inf and (best is None or v < best[0]):
                best = (v, r)
        if best is None:
            raise SingularMatrix("matrix is singular within precision")
        r = best[1]
        M[c], M[r] = M[r], M[c]
        pinv = M[c][c].inverse(prec)
        M[c] = [x * pinv for x in M[c]]
        for r2 in range(h):
            if r2 != c and M[r2][c].coeffs:
                f = M[r2][c]
                M[r2] = [x - f * y for x, y in zip(M[r2], M[c])]
            elif r2 != c:
                M[r2][c] = Series.zero(F)
    return [row[h:] for row in M]


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_core(F, B, N, track):
    """Diagonalize the h x h matrix B over O/t^N.

    Returns (exps, U, V) with P B Q = diag(t^exps) for the recorded operations;
    U = P^{-1}, V = Q^{-1} when ``track``.  ``exps[i]`` is None when the
    remaining block vanishes modulo t^N.
    """
    h = len(B)
    w = len(B[0])
    A = [list(r) for r in B]
    one = [1] + [0] * (N - 1)
    zero = [0] * N
    U = [[list(one) if i == j else list(zero) for j in range(h)] for i in range(h)] if track else None
    V = [[list(one) if i == j else list(zero) for j in range(w)] for i in range(w)] if track else None
    exps = []
    for s in range(min(h, w)):
        best = None
        for i in range(s, h):
            for j in range(s, w):
                v = _tval(A[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        k, i, j = best
        if i != s:
            A[i], A[s] = A[s], A[i]
            if track:
                for row in U:
                    row[i], row[s] = row[s], row[i]
        if j != s:
            for row in A:
                row[j], row[s] = row[s], row[j]
            if track:
                V[j], V[s] = V[s], V[j]
        unit = A[s][s][k:] + [0] * k
        uinv = _tinv(F, unit, N)
        # row s *= uinv, so the pivot becomes t^k
        A[s] = [_tmul(F, uinv, x, N) for x in A[s]]
        if track:
            # U <- U * diag(unit)
            for row in U:
                row[s] = _tmul(F, row[s], unit, N)
        for r in range(s + 1, h):
            if _tval(A[r][s]) is None:
                continue
            f = A[r][s][k:] + [0] * k  # A[r][s] / t^k
            A[r] = [_taxpy(F, x, f, y, N) for x, y in zip(A[r], A[s])]
            if track:
                for row in U:
                    row[s] = [F.add(a, b) for a, b in zip(row[s], _tmul(F, f, row[r], N))]
        for c in range(s + 1, w):
            if _tval(A[s][c]) is None:
                continue
            g = A[s][c][k:] + [0] * k
            for row in A:
                row[c] = _taxpy(F, row[c], g, row[s], N)
            if track:
                V[s] = [[F.add(a, b) for a, b in zip(x, _tmul(F, g, y, N))] for x, y in zip(V[s], V[c])]
        exps.append(k)
    exps.extend([None] * (h - len(exps)))
    return exps, U, V


def smith_normal_form(A, working_prec: int | None = None):
    """Return (U, D, V) with A = U D V, U and V in GL_h(O), D = diag(t^mu), mu weakly decreasing.

    U and V are returned modulo t^N for the N used internally (recorded as
    their precision); D is exact.
    """
    h = len(A)
    F = A[0][0].ctx
    a = _scaling(A)
    if a == math.inf:
        raise SingularMatrix("zero matrix")
    N = _working_N(A, a, h, working_prec)
    B = [[_tp(s, a, N) for s in row] for row in A]
    exps, U, V = _snf_core(F, B, N, True)
    if None in exps:
        if _rel_prec(A, a) == math.inf and working_prec is None:
            raise SingularMatrix("determinant vanishes")
        raise PrecisionExceeded("pivot valuation not certified at working precision")
    # pivots come out increasing; reverse to make mu weakly decreasing
    order = list(range(h))[::-1]
    mu = [exps[i] + a for i in order]
    # dividing by pivots of valuation up to max(exps) costs that many digits
    pu = N - max(exps)
    Us = [[_from_tp(F, U[i][j], 0, pu) for j in order] for i in range(h)]
    Vs = [[_from_tp(F, V[i][j], 0, pu) for j in range(h)] for i in order]
    zero = Series.zero(F)
    D = [[Series.t(F, mu[i]) if i == j else zero for j in range(h)] for i in range(h)]
    return Us, D, Vs


def _working_N(A, a, h, working_prec):
    R = _rel_prec(A, a)
    if R == math.inf:
        N = h * _max_deg(A, a) + 1
        if working_prec is not None:
            N = min(N, working_prec)
    else:
        N = int(R)
        if working_prec is not None:
            N = min(N, working_prec)
    if N <= 0:
        raise PrecisionExceeded("no certified coefficients")
    return N


def elementary_divisors(A) -> list[int]:
    """Valuations of the elementary divisors of a square matrix, increasing."""
    h = len(A)
    F = A[0][0].ctx
    a = _scaling(A)
    if a == math.inf:
        raise SingularMatrix("zero matrix")
    N = _working_N(A, a, h, None)
    B = [[_tp(s, a, N) for s in row] for row in A]
    exps, _, _ = _snf_core(F, B, N, False)
    if None in exps:
        if _rel_prec(A, a) == math.inf:
            raise SingularMatrix("determinant vanishes")
        raise PrecisionExceeded("pivot valuation not certified at working precision")
    return [x + a for x in exps]


# ---------------------------------------------------------------------------
# Hermite form


def _hermite(F, cols, h, c):
    """Canonical Hermite form of span(cols) + t^c Lambda_0 (cols: list of Series vectors)."""
    a = c
    for col in cols:
        for s in col:
            if s.coeffs:
                a = min(a, s.v_min)
    d = c - a
    work = [[_tp(s, a, d) for s in col] for col in cols] if d > 0 else []
    pivots = [None] * h  # (exponent k relative to a, column vector)
    for i in range(h - 1, -1, -1):
        best = None
        for n, col in enumerate(work):
            v = _tval(col[i])
            if v is not None and (best is None or v < best[0]):
                best = (v, n)
        if best is None:
            vec = [[0] * d for _ in range(h)]
            pivots[i] = (d, vec)
            continue
        k, n = best
        pcol = work.pop(n)
        unit = pcol[i][k:] + [0] * k
        uinv = _tinv(F, unit, d)
        pcol = [_tmul(F, uinv, x, d) for x in pcol]
        # t^{d-k} pcol kills row i modulo t^d but may still matter above it
        extra = [([0] * (d - k) + x)[:d] for x in pcol]
        extra[i] = [0] * d
        work.append(extra)
        rest = []
        for col in work:
            if _tval(col[i]) is not None:
                f = col[i][k:] + [0] * k
                col = [_taxpy(F, x, f, y, d) for x, y in zip(col, pcol)]
            if any(_tval(x) is not None for x in col[:i]):
                rest.append(col)
        work = rest
        pivots[i] = (k, pcol)
    # reduce entries right of each pivot modulo t^{k_i}
    H = [[None] * h for _ in range(h)]
    colvecs = [p[1] for p in pivots]
    ks = [p[0] for p in pivots]
    for j in range(h):
        col = [list(x) for x in colvecs[j]]
        for i in range(j - 1, -1, -1):
            k = ks[i]
            x = col[i]
            if any(x[k:]):
                f = x[k:] + [0] * k  # quotient by t^k of the high part
                pc = colvecs[i]
                col = [_taxpy(F, y, f, z, d) if r <= i else y for r, (y, z) in enumerate(zip(col, pc))]
        colvecs[j] = col
    zero = Series.zero(F)
    for j in range(h):
        for i in range(h):
            if i > j:
                H[i][j] = zero
            elif i == j:
                H[i][j] = Series.t(F, ks[j] + a)
            else:
                x = colvecs[j][i][: ks[i]]
                H[i][j] = Series(F, a, tuple(x), None)
    return H


def _hnf_floor(H):
    """An exponent c with t^c Lambda_0 contained in the lattice spanned by H."""
    h = len(H)
    vol = sum(H[i][i].v_min for i in range(h))
    a = min(s.v_min for row in H for s in row if s.coeffs)
    return vol - (h - 1) * a


def _generated_hnf(cols):
    if not cols:
        raise SingularMatrix("no generators")
    h = len(cols[0])
    F = cols[0][0].ctx
    A = from_columns(cols)
    a = _scaling(A)
    if a == math.inf:
        raise SingularMatrix("zero generators")
    N = _working_N(A, a, h, None)
    B = [[_tp(s, a, N) for s in row] for row in A]
    exps, _, _ = _snf_core(F, B, N, False)
    if None in exps:
        if _rel_prec(A, a) == math.inf:
            raise SingularMatrix("generators do not span a full-rank lattice")
        raise PrecisionExceeded("generator precision too low to certify the lattice")
    return tuple(tuple(r) for r in _hermite(F, cols, h, a + max(exps)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cochar:
    entries: tuple

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError(f"{e} is not weakly decreasing")
        object.__setattr__(self, "entries", e)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def dual(self) -> "Cochar":
        return Cochar(tuple(-x for x in reversed(self.entries)))

    def dominated_by(self, other: "Cochar") -> bool:
        """self <= other in the dominance order (requires equal sums)."""
        if sum(self.entries) != sum(other.entries):
            raise ValueError("dominance needs equal entry sums")
        a = b = 0
        for x, y in zip(self.entries, other.entries):
            a += x
            b += y
            if a > b:
                return False
        return True

    def __repr__(self):
        return f"Cochar{self.entries}"


class Lattice:
    """Full-rank O-lattice in L^h, spanned by the columns of its basis."""

    __slots__ = ("ctx", "h", "hnf", "__dict__")

    def __init__(self, basis, *, _hnf=False):
        h = len(basis)
        if h == 0 or any(len(r) != h for r in basis):
            raise ValueError("basis must be a nonempty square matrix")
        F = basis[0][0].ctx
        self.ctx, self.h = F, h
        if _hnf:
            self.hnf = tuple(tuple(r) for r in basis)
            return
        self.hnf = _generated_hnf(columns(basis))

    @classmethod
    def from_columns(cls, cols):
        return cls(from_columns(cols))

    @classmethod
    def generated(cls, cols):
        """Lattice spanned by any finite list of vectors (must have full rank)."""
        return cls(_generated_hnf(cols), _hnf=True)

    @classmethod
    def span(cls, cols, floor: int):
        """Lattice spanned by ``cols`` together with t^floor Lambda_0 (any number of columns)."""
        F = cols[0][0].ctx if cols else None
        h = len(cols[0])
        return cls(_hermite(F, cols, h, floor), _hnf=True)

    @classmethod
    def standard(cls, F: FieldCtx, h: int, k: int = 0):
        """t^k Lambda_0."""
        zero = Series.zero(F)
        return cls([[Series.t(F, k) if i == j else zero for j in range(h)] for i in range(h)], _hnf=True)

    @property
    def basis(self):
        return [list(r) for r in self.hnf]

    def columns(self):
        return columns(self.hnf)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(self.hnf[i][i].v_min for i in range(self.h))

    @cached_property
    def floor(self) -> int:
        return _hnf_floor(self.hnf)

    @cached_property
    def ceiling(self) -> int:
        """Largest k with the lattice inside t^k Lambda_0."""
        return min(s.v_min for row in self.hnf for s in row if s.coeffs)

    def volume(self) -> int:
        return sum(self.pivots)

    def scale(self, k: int) -> "Lattice":
        return Lattice([[s.shift(k) for s in row] for row in self.hnf], _hnf=True)

    def transform(self, g) -> "Lattice":
        """g * M for a matrix g over L."""
        return Lattice(mat_mul(g, self.basis))

    def sigma(self, k: int = 1) -> "Lattice":
        return Lattice(mat_sigma(self.hnf, k), _hnf=True)

    def key(self):
        return tuple((s.v_min, s.coeffs) for row in self.hnf for s in row)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ctx == other.ctx and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other):
        return contains(other, self)

    def __repr__(self):
        return f"Lattice(h={self.h}, vol={self.volume()}, pivots={self.pivots})"


def _check_pair(M1, M2):
    if M1.h != M2.h or M1.ctx != M2.ctx:
        raise ValueError("lattices of different rank or field")


def solve_coords(v, M: Lattice):
    """x with H x = v (back substitution; H has monomial diagonal so this is exact)."""
    H = M.hnf
    h = M.h
    x = [None] * h
    for i in range(h - 1, -1, -1):
        r = v[i]
        for j in range(i + 1, h):
            if H[i][j].coeffs and _nonzero(x[j]):
                r = r - H[i][j] * x[j]
        x[i] = r.shift(-H[i][i].v_min)
    return x


def member(v, M: Lattice) -> bool:
    for xi in solve_coords(v, M):
        if xi.coeffs and xi.v_min < 0:
            return False
        if not xi.coeffs and xi.prec is not None and xi.prec < 0:
            raise PrecisionExceeded("membership undecided at this precision")
        if xi.coeffs and xi.prec is not None and xi.prec < 0:
            raise PrecisionExceeded("membership undecided at this precision")
    return True


def reduce_mod(v, M: Lattice):
    """Canonical representative of v modulo M: entry i has exponents < k_i, exact."""
    H = M.hnf
    v = list(v)
    for i in range(M.h - 1, -1, -1):
        k = H[i][i].v_min
        s = v[i]
        if s.prec is not None and s.prec < k:
            raise PrecisionExceeded("vector not known modulo the lattice")
        hi = {e: c for e, c in s.terms().items() if e >= k}
        if hi:
            q = Series.from_dict(s.ctx, hi).shift(-k)
            v = [v[r] - H[r][i] * q if r < i else v[r] for r in range(M.h)]
        lo = {e: c for e, c in s.terms().items() if e < k}
        v[i] = Series.from_dict(s.ctx, lo)
    return v


def contains(M: Lattice, N: Lattice) -> bool:
    """N subset of M."""
    _check_pair(M, N)
    return all(member(c, M) for c in N.columns())


def relative_position(M1: Lattice, M2: Lattice) -> Cochar:
    """mu with basis(M1)^{-1} basis(M2) in K t^mu K."""
    _check_pair(M1, M2)
    C = mat_mul(_hnf_inverse(M1.hnf), list(map(list, M2.hnf)))
    ex = elementary_divisors(C)
    return Cochar(tuple(sorted(ex, reverse=True)))


def _hnf_inverse(H):
    """Exact inverse of an upper triangular matrix with monomial diagonal."""
    h = len(H)
    F = H[0][0].ctx
    zero = Series.zero(F)
    inv = [[zero] * h for _ in range(h)]
    for j in range(h):
        # solve H x = e_j
        x = [zero] * h
        for i in range(j, -1, -1):
            r = Series.one(F) if i == j else zero
            for k in range(i + 1, j + 1):
                if H[i][k].coeffs and x[k].coeffs:
                    r = r - H[i][k] * x[k]
            x[i] = r.shift(-H[i][i].v_min)
        for i in range(h):
            inv[i][j] = x[i]
    return inv


def volume(M: Lattice) -> int:
    return M.volume()


def lattice_sum(M1: Lattice, M2: Lattice) -> Lattice:
    _check_pair(M1, M2)
    return Lattice.span(M1.columns() + M2.columns(), min(M1.floor, M2.floor))


def dual_standard(M: Lattice, twist: int = 0) -> Lattice:
    """Dual for x^T sigma^twist(y): basis sigma^twist(H)^{-T}."""
    H = M.sigma(twist).hnf if twist else M.hnf
    return Lattice(transpose(_hnf_inverse(H)))


def intersect(M1: Lattice, M2: Lattice) -> Lattice:
    _check_pair(M1, M2)
    return dual_standard(lattice_sum(dual_standard(M1), dual_standard(M2)))


@dataclass(frozen=True, eq=False)
class Form:
    """Pairing f(x, y) = x^T G sigma^twist(y)."""

    gram: tuple
    twist: int = 0
    symmetry: str = "none"

    def __post_init__(self):
        if self.symmetry not in ("alternating", "hermitian", "none"):
            raise ValueError(f"unknown symmetry {self.symmetry}")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in self.gram))

    def pair(self, x, y) -> Series:
        ys = [s.sigma(self.twist) for s in y] if self.twist else y
        Gy = mat_vec([list(r) for r in self.gram], ys)
        F = x[0].ctx
        acc = Series.zero(F)
        for a, b in zip(x, Gy):
            if a.coeffs and b.coeffs:
                acc = acc + a * b
        return acc

    @cached_property
    def gram_inv_t(self):
        return transpose(mat_inverse([list(r) for r in self.gram]))


def dual(M: Lattice, f: Form | None = None) -> Lattice:
    """{x : f(x, M) in O}."""
    if f is None:
        return dual_standard(M)
    H = M.sigma(f.twist).hnf if f.twist else M.hnf
    return Lattice(mat_mul(f.gram_inv_t, transpose(_hnf_inverse(H))))
