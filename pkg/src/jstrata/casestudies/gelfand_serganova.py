"""The thin Schubert cell counterexample in Gr_3 of a 7-space.

The generic x_1..x_6 (and gamma) are modelled as indeterminates over F_p, so
"the nonzero minors are linearly independent over k" becomes an exact rank
statement about their coefficient vectors.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .mpoly import MPoly, coefficient_rank, det

NAMES = ("x1", "x2", "x3", "x4", "x5", "x6", "lam", "gam")
TRIPLES = list(itertools.combinations(range(7), 3))

# Point positions of the seven columns in the configuration picture (an affine chart of P^2).
FIGURE_POINTS = {
    1: (Fraction(1), Fraction(1)),
    2: (Fraction(7), Fraction(1)),
    3: (Fraction(4), Fraction(7)),
    4: (Fraction(4), Fraction(3)),
    5: (Fraction(11, 2), Fraction(4)),
    6: (Fraction(5, 2), Fraction(4)),
    7: (Fraction(4), Fraction(1)),
}


def _ring(p):
    v = {n: MPoly.var(p, NAMES, n) for n in NAMES}
    return v, MPoly.const(p, NAMES, 0), MPoly.const(p, NAMES, 1)


def matrix_a(p: int = 3, lam=None):
    """A_lambda; lam=None keeps lambda as an indeterminate, an int substitutes it."""
    v, z, o = _ring(p)
    x1, x2, x3, x4, x5, x6 = (v[f"x{i}"] for i in range(1, 7))
    L = v["lam"] if lam is None else MPoly.const(p, NAMES, lam)
    return [
        [o, z, z, x1 * L, z, x1 * x5, x1 * x6],
        [z, o, z, x2 * L, x2 * x4, z, x2 * x6],
        [z, z, o, x3 * L, x3 * x4, x3 * x5, z],
    ]


def matrix_b(p: int = 3):
    v, z, o = _ring(p)
    x1, x2, x3, x4, x5, x6 = (v[f"x{i}"] for i in range(1, 7))
    return [
        [o, z, z, z, z, x1 * x5, x1 * x6],
        [z, o, z, z, x2 * x4, z, v["gam"]],
        [z, z, o, z, x3 * x4, x3 * x5, z],
    ]


def minors(A, d: int = 3) -> dict:
    """J (1-based column triple) -> det A_J."""
    out = {}
    for J in itertools.combinations(range(len(A[0])), d):
        out[tuple(j + 1 for j in J)] = det([[row[j] for j in J] for row in A])
    return out


def minor_list(A) -> tuple:
    """(L_A, the nonzero minors in the order of L_A)."""
    ms = minors(A)
    L = sorted(J for J, f in ms.items() if not f.is_zero())
    return L, [ms[J] for J in L]


def collinear_triples(points=FIGURE_POINTS):
    out = []
    for a, b, c in itertools.combinations(sorted(points), 3):
        (x1, y1), (x2, y2), (x3, y3) = points[a], points[b], points[c]
        if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) == 0:
            out.append((a, b, c))
    return out


def gs_minor_lists(p: int = 3) -> dict:
    """Minor lists and independence ranks for A_lambda, A_1, A_0 and B."""
    rep = {"p": p, "I3": len(TRIPLES)}
    lists = {}
    for name, A in (("A_lam", matrix_a(p)), ("A1", matrix_a(p, 1)), ("A0", matrix_a(p, 0)), ("B", matrix_b(p))):
        L, fs = minor_list(A)
        lists[name] = L
        rep[f"L_{name}"] = len(L)
        rep[f"rank_{name}"] = coefficient_rank(fs, p)
    rep["lists_equal"] = lists["A0"] == lists["B"]
    rep["ranks"] = [rep["rank_A1"], rep["rank_A0"], rep["rank_B"]]
    rep["collinear_triples"] = len(collinear_triples())
    rep["vanishing_A1"] = sorted(set(itertools.combinations(range(1, 8), 3)) - set(lists["A1"]))
    return rep


def mat_mul(A, phi):
    """A (MPoly rows) times an integer matrix phi."""
    p = A[0][0].p
    out = []
    for row in A:
        new = []
        for j in range(len(phi[0])):
            acc = MPoly.const(p, NAMES, 0)
            for k, a in enumerate(row):
                if phi[k][j] % p and not a.is_zero():
                    acc = acc + a * (phi[k][j] % p)
            new.append(acc)
        out.append(new)
    return out


def _int_det(M, p):
    n = len(M)
    if n == 1:
        return M[0][0] % p
    return sum((-1) ** j * M[0][j] * _int_det([r[:j] + r[j + 1:] for r in M[1:]], p) for j in range(n)) % p


def cauchy_binet(A, phi, J) -> tuple:
    """(det (A phi)_J, sum_J' det A_J' det phi_{J',J}) for a 0-based column triple J."""
    p = A[0][0].p
    lhs = det([[row[j] for j in J] for row in mat_mul(A, phi)])
    rhs = MPoly.const(p, NAMES, 0)
    for Jp in itertools.combinations(range(len(A[0])), len(J)):
        c = _int_det([[phi[a][b] for b in J] for a in Jp], p)
        if c:
            rhs = rhs + det([[row[j] for j in Jp] for row in A]) * c
    return lhs, rhs


def random_phi(rng: random.Random, p: int = 2, n: int = 7):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def cauchy_binet_check(trials: int = 20, p: int = 2, seed: int = 0) -> dict:
    rng = random.Random(seed)
    A = matrix_a(p)
    ok = 0
    total = 0
    for _ in range(trials):
        phi = random_phi(rng, p)
        for J in TRIPLES:
            lhs, rhs = cauchy_binet(A, phi, J)
            total += 1
            ok += lhs == rhs
    return {"p": p, "trials": trials, "checked": total, "equal": ok, "passed": ok == total}
