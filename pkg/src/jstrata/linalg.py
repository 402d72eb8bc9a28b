"""Linear algebra over a finite field F_{q^e} (vectors are lists of encoded ints)."""

from __future__ import annotations

from .ffield import FieldCtx


def rref(F: FieldCtx, rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(F, rows) -> int:
    return len(rref(F, rows)[1])


def kernel(F, rows, ncols=None):
    """Basis of {x : A x = 0} for A given by rows."""
    if not rows:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    R, piv = rref(F, rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for r, c in zip(R, piv):
            x[c] = F.neg(r[f])
        out.append(x)
    return out


def in_span(F, rows, v) -> bool:
    return rank(F, list(rows) + [v]) == rank(F, rows)


def span_key(F, rows) -> tuple:
    """Canonical hashable key of a subspace."""
    R, _ = rref(F, rows)
    return tuple(tuple(r) for r in R)


def intersect_spaces(F, U, W, n):
    """Basis of the intersection of row spaces U and W in F^n."""
    if not U or not W:
        return []
    # solve a.U = b.W
    A = [list(u) for u in U] + [[F.neg(x) for x in w] for w in W]
    # kernel of A^T (coefficient combos)
    At = [list(col) for col in zip(*A)]
    K = kernel(F, At, len(A))
    out = []
    for k in K:
        v = [0] * n
        for c, u in zip(k[: len(U)], U):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, u)]
        out.append(v)
    R, _ = rref(F, out)
    return R
