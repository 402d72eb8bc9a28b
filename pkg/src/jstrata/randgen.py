"""Random inputs and brute-force oracles shared by the acceptance runner and the tests."""

from __future__ import annotations

import itertools
import random

from .ffield import FieldCtx
from .lattice import Lattice, mat_mul
from .series import Series


def random_series(rng: random.Random, F: FieldCtx, lo: int = -1, hi: int = 2, density: float = 0.5) -> Series:
    d = {k: rng.randrange(F.order) for k in range(lo, hi + 1) if rng.random() < density}
    return Series.from_dict(F, d)


def random_matrix(rng, F, h, lo=-1, hi=2, density=0.5):
    return [[random_series(rng, F, lo, hi, density) for _ in range(h)] for _ in range(h)]


def det_series(A):
    """Determinant by Laplace expansion (exact series)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = Series.zero(A[0][0].ctx)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in A[1:]]
        term = A[0][j] * det_series(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def random_invertible(rng, F, h, lo=-1, hi=2, density=0.5):
    while True:
        A = random_matrix(rng, F, h, lo, hi, density)
        if not det_series(A).is_zero():
            return A


def elementary_divisors_oracle(A) -> list:
    """Increasing elementary divisors from valuations of gcds of k x k minors."""
    n = len(A)
    deltas = [0]
    for k in range(1, n + 1):
        best = min(
            det_series([[A[i][j] for j in cs] for i in rows]).valuation()
            for rows in itertools.combinations(range(n), k)
            for cs in itertools.combinations(range(n), k)
        )
        deltas.append(best)
    return [deltas[k] - deltas[k - 1] for k in range(1, n + 1)]


def random_iwahori(rng, F, h, deg: int = 2):
    """u in GL_h(O) that is lower triangular mod t with unit diagonal entries."""
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            if i == j:
                c = rng.randrange(1, F.order)
                row.append(Series.monomial(F, c, 0) + random_series(rng, F, 1, deg))
            elif i > j:
                row.append(random_series(rng, F, 0, deg))
            else:
                row.append(random_series(rng, F, 1, deg))
        rows.append(row)
    return rows


def random_mu(rng, h: int, lo: int = -1, hi: int = 1) -> tuple:
    return tuple(rng.randint(lo, hi) for _ in range(h))


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    F = blocks[0][0][0].ctx
    out = [[Series.zero(F) for _ in range(n)] for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def iwahori_translate(rng, mu_lattice: Lattice, h: int, d: int = 1) -> Lattice:
    """u * eps^mu Λ0 with u a random block-diagonal Iwahori element."""
    F = mu_lattice.ctx
    u = block_diag([random_iwahori(rng, F, h) for _ in range(d)])
    return Lattice(mat_mul(u, mu_lattice.basis))
