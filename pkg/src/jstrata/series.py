"""Truncated Laurent series over F_{q^e} with certified precision.

A series is ``sum_{i >= v_min} c_i t^i`` known modulo ``t^prec``.  Finitely
supported inputs carry ``prec=None`` and are treated as exact; ring
operations on exact series stay exact, and only inversion introduces a cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PrecisionExceeded, ZeroInput
from .ffield import FieldCtx

DEFAULT_PREC = 64
INF = math.inf


def _add_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True, eq=False)
class Series:
    ctx: FieldCtx
    v_min: int
    coeffs: tuple
    prec: int | None = None

    def __post_init__(self):
        c = list(self.coeffs)
        v = self.v_min
        if self.prec is not None and v + len(c) > self.prec:
            c = c[: max(0, self.prec - v)]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        v += i
        while c and c[-1] == 0:
            c.pop()
        if not c:
            v = self.prec if self.prec is not None else 0
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "v_min", v)

    # -- constructors --

    @classmethod
    def zero(cls, ctx, prec=None):
        return cls(ctx, 0, (), prec)

    @classmethod
    def monomial(cls, ctx, c: int, k: int = 0):
        return cls(ctx, k, (c,), None)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, 0, (1,), None)

    @classmethod
    def t(cls, ctx, k: int = 1):
        return cls(ctx, k, (1,), None)

    @classmethod
    def from_dict(cls, ctx, terms: dict, prec=None):
        if not terms:
            return cls.zero(ctx, prec)
        lo, hi = min(terms), max(terms)
        c = [0] * (hi - lo + 1)
        for k, x in terms.items():
            c[k - lo] = x
        return cls(ctx, lo, tuple(c), prec)

    # -- queries --

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True if no nonzero coefficient is stored (zero within precision)."""
        return not self.coeffs

    def valuation(self, certain: bool = False):
        if self.coeffs:
            return self.v_min
        if certain and self.prec is not None:
            raise PrecisionExceeded(f"series vanishes only modulo t^{self.prec}")
        return INF

    def lower_val(self):
        """A certified lower bound for the valuation (prec for inexact zero)."""
        if self.coeffs:
            return self.v_min
        return INF if self.prec is None else self.prec

    def degree(self):
        """Largest stored exponent; None for zero."""
        return self.v_min + len(self.coeffs) - 1 if self.coeffs else None

    def coeff(self, k: int) -> int:
        if self.prec is not None and k >= self.prec:
            raise PrecisionExceeded(f"coefficient t^{k} beyond precision {self.prec}")
        i = k - self.v_min
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def leading(self) -> int:
        if not self.coeffs:
            raise ZeroInput("leading coefficient of zero")
        return self.coeffs[0]

    def terms(self):
        return {self.v_min + i: c for i, c in enumerate(self.coeffs) if c}

    # -- arithmetic --

    def _check(self, other):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("series over different fields")

    def __add__(self, other):
        self._check(other)
        F = self.ctx
        if not other.coeffs:
            return Series(F, self.v_min, self.coeffs, _add_prec(self.prec, other.prec))
        if not self.coeffs:
            return Series(F, other.v_min, other.coeffs, _add_prec(self.prec, other.prec))
        lo = min(self.v_min, other.v_min)
        hi = max(self.v_min + len(self.coeffs), other.v_min + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.v_min - lo + i] = c
        add = F.add
        for i, c in enumerate(other.coeffs):
            j = other.v_min - lo + i
            out[j] = add(out[j], c)
        return Series(F, lo, tuple(out), _add_prec(self.prec, other.prec))

    def __neg__(self):
        return Series(self.ctx, self.v_min, tuple(self.ctx.neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ctx.from_int(other))
        self._check(other)
        F = self.ctx
        va, vb = self.lower_val(), other.lower_val()
        prec = None
        if self.prec is not None:
            prec = self.prec + vb
        if other.prec is not None:
            p2 = other.prec + va
            prec = p2 if prec is None else min(prec, p2)
        if prec is not None and prec == INF:
            prec = None
        if not self.coeffs or not other.coeffs:
            return Series(F, 0, (), prec)
        a, b = self.coeffs, other.coeffs
        if prec is not None:
            n = max(0, prec - va - vb)
            a, b = a[:n], b[:n]
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        mul, add = F.mul, F.add
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Series(F, va + vb, tuple(out), prec)

    __rmul__ = __mul__

    def scale(self, c: int):
        """Multiply by the constant [c]."""
        if c == 0:
            return Series(self.ctx, 0, (), self.prec if self.prec is None else self.prec)
        return Series(self.ctx, self.v_min, tuple(self.ctx.mul(c, x) for x in self.coeffs), self.prec)

    def shift(self, k: int):
        """Multiply by t^k."""
        prec = None if self.prec is None else self.prec + k
        return Series(self.ctx, self.v_min + k, self.coeffs, prec)

    def truncate(self, prec: int):
        """Forget everything from t^prec on."""
        prec = prec if self.prec is None else min(prec, self.prec)
        return Series(self.ctx, self.v_min, self.coeffs, prec)

    def inverse(self, prec: int = DEFAULT_PREC):
        """1/s known modulo t^prec (or less, if s itself is inexact)."""
        if not self.coeffs:
            raise ZeroInput("inverse of zero series")
        F = self.ctx
        v = self.v_min
        if self.exact and len(self.coeffs) == 1:
            return Series(F, -v, (F.inv(self.coeffs[0]),), None)
        cap = prec
        if self.prec is not None:
            cap = min(cap, self.prec - 2 * v)
        n = cap + v  # number of coefficients of the unit part's inverse
        if n <= 0:
            raise PrecisionExceeded("inverse has no certified coefficient")
        u = self.coeffs
        inv0 = F.inv(u[0])
        out = [inv0]
        mul, add, neg = F.mul, F.add, F.neg
        for k in range(1, n):
            acc = 0
            for j in range(1, min(k, len(u) - 1) + 1):
                if u[j] and out[k - j]:
                    acc = add(acc, mul(u[j], out[k - j]))
            out.append(neg(mul(acc, inv0)))
        return Series(F, -v, tuple(out), cap)

    def __truediv__(self, other):
        return self * other.inverse()

    def sigma(self, k: int = 1):
        fr = self.ctx.frobenius
        return Series(self.ctx, self.v_min, tuple(fr(c, k) for c in self.coeffs), self.prec)

    def equals(self, other) -> bool:
        """Equality modulo the common precision."""
        d = self - other
        return d.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.ctx == other.ctx and self.equals(other) and self.prec == other.prec

    def __hash__(self):
        return hash((self.v_min, self.coeffs, self.prec))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"{c}*t^{self.v_min + i}" for i, c in enumerate(self.coeffs) if c)
        tail = "" if self.prec is None else f" + O(t^{self.prec})"
        return f"Series({body}{tail})"


def sigma_series(s: Series, k: int = 1) -> Series:
    return s.sigma(k)


def valuation(s: Series, certain: bool = False):
    return s.valuation(certain)


def lift(ctx: FieldCtx, x: int) -> Series:
    """The constant series [x]."""
    return Series(ctx, 0, (x,), None)
