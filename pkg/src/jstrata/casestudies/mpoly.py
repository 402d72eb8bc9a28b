"""Sparse multivariate polynomials over F_p."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MPoly:
    p: int
    names: tuple
    terms: tuple  # sorted ((exponent tuple, coeff), ...), coeff in 1..p-1

    @classmethod
    def from_dict(cls, p, names, d) -> "MPoly":
        return cls(p, tuple(names), tuple(sorted((e, c % p) for e, c in d.items() if c % p)))

    @classmethod
    def const(cls, p, names, c) -> "MPoly":
        return cls.from_dict(p, names, {(0,) * len(names): c})

    @classmethod
    def var(cls, p, names, name) -> "MPoly":
        e = tuple(1 if n == name else 0 for n in names)
        return cls.from_dict(p, names, {e: 1})

    def as_dict(self):
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.p != other.p or self.names != other.names:
            raise ValueError("polynomials over different rings")

    def _lift(self, other):
        if isinstance(other, int):
            return MPoly.const(self.p, self.names, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return MPoly.from_dict(self.p, self.names, d)

    __radd__ = __add__

    def __neg__(self):
        return MPoly.from_dict(self.p, self.names, {e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return MPoly.from_dict(self.p, self.names, d)

    __rmul__ = __mul__

    def subs(self, name, value: int) -> "MPoly":
        """Substitute an integer for one variable."""
        k = self.names.index(name)
        d: dict = {}
        for e, c in self.terms:
            e2 = e[:k] + (0,) + e[k + 1:]
            d[e2] = d.get(e2, 0) + c * pow(value, e[k], self.p)
        return MPoly.from_dict(self.p, self.names, d)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            parts.append(mono if c == 1 and mono else f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def det(M):
    """Determinant by Laplace expansion (small matrices of MPoly or int)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def coefficient_rank(polys, p: int) -> int:
    """F_p-rank of the coefficient vectors of the given polynomials."""
    from ..ffield import field
    from ..linalg import rank

    monos = sorted({e for f in polys for e, _ in f.terms})
    idx = {e: i for i, e in enumerate(monos)}
    rows = []
    for f in polys:
        r = [0] * len(monos)
        for e, c in f.terms:
            r[idx[e]] = c
        rows.append(r)
    return rank(field(p, 1, 1), rows) if rows else 0
