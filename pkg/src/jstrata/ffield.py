"""Finite fields F_{q^e}, q = p^r, with the q-power Frobenius.

Elements are plain ints: the base-p digits of the integer are the
coefficients of the element in the power basis of the defining polynomial,
least significant digit first.  Multiplication goes through exp/log tables
and addition (for odd p) through Zech logarithms, so the hot loops in the
series and lattice code only ever touch small integers.

>>> F = field(2, 1, 2)
>>> g = F.generator()
>>> F.mul(g, g) == F.frobenius(g, 1)
True
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import ZeroInput

MAX_TABLE_ORDER = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomial helpers over F_p (coefficient lists, constant term first) --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_ptrim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, k, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Rabin-style test: f has no factor of degree <= deg(f)/2."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(1, n // 2 + 1):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def conway_free_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n over F_p.

    Order: coefficient tuples (c_0, ..., c_{n-1}) compared lexicographically,
    constant term first.
    """
    for coeffs in itertools.product(range(p), repeat=n):
        f = list(coeffs) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


def _encode(coeffs, p):
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v, p, n):
    out = []
    for _ in range(n):
        v, d = divmod(v, p)
        out.append(d)
    return out


class _Tables:
    """exp/log/Zech tables for F_{p^n}; shared by every context with that (p, n)."""

    def __init__(self, p: int, n: int):
        order = p ** n
        if order > MAX_TABLE_ORDER:
            raise ValueError(f"field of order {order} exceeds table limit")
        self.p, self.n, self.order = p, n, order
        f = list(conway_free_polynomial(p, n))
        self.poly = tuple(f)
        N = order - 1
        # smallest encoded element generating the multiplicative group
        for cand in range(2 if order > 2 else 1, order):
            exp = [0] * N
            log = [-1] * order
            cur = [1]
            ok = True
            for k in range(N):
                code = _encode(cur + [0] * (n - len(cur)), p)
                if log[code] != -1:
                    ok = False
                    break
                exp[k] = code
                log[code] = k
                cur = _pmulmod(cur, _decode(cand, p, n), f, p)
            if ok:
                self.gen = cand
                self.exp, self.log = exp, log
                break
        one = 1
        self.zech = [None] * N
        for k in range(N):
            s = _decode(self.exp[k], p, n)
            s[0] = (s[0] + one) % p
            code = _encode(s, p)
            self.zech[k] = None if code == 0 else self.log[code]
        self.neg_shift = 0 if p == 2 else N // 2


@functools.lru_cache(maxsize=None)
def _tables(p: int, n: int) -> _Tables:
    return _Tables(p, n)


class FieldCtx:
    """The field F_{q^e} with q = p^r, presented over F_p.

    ``frobenius`` is x -> x^{q^k}; ``frobenius_p`` is x -> x^{p^k}.
    """

    def __init__(self, p: int, r: int = 1, e: int = 1):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if r < 1 or e < 1:
            raise ValueError("r and e must be positive")
        self.p, self.r, self.e = p, r, e
        self.n = r * e
        self.q = p ** r
        self.order = p ** self.n
        t = _tables(p, self.n)
        self._t = t
        self.poly = t.poly
        self._exp, self._log, self._zech = t.exp, t.log, t.zech
        self._N = self.order - 1
        if p == 2:
            self.add = self._add2
            self.sub = self._add2
            self.neg = _identity
        else:
            self.add = self._addz
            self.sub = self._subz
            self.neg = self._negz

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.r, self.e) == (other.p, other.r, other.e)

    def __hash__(self):
        return hash((self.p, self.r, self.e))

    # -- arithmetic on encoded ints --

    @staticmethod
    def _add2(a, b):
        return a ^ b

    def _addz(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % self._N]
        if z is None:
            return 0
        return self._exp[(la + z) % self._N]

    def _negz(self, a):
        if a == 0:
            return 0
        return self._exp[(self._log[a] + self._t.neg_shift) % self._N]

    def _subz(self, a, b):
        return self._addz(a, self._negz(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._N]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self._N]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        return self._exp[(self._log[a] * k) % self._N]

    def frobenius(self, a, k=1):
        """a^{q^k}; negative k is the inverse Frobenius."""
        if a == 0:
            return 0
        k %= self.e
        return self._exp[(self._log[a] * pow(self.q, k, self._N)) % self._N] if self._N > 1 else a

    def frobenius_p(self, a, k=1):
        if a == 0:
            return 0
        k %= self.n
        return self._exp[(self._log[a] * pow(self.p, k, self._N)) % self._N] if self._N > 1 else a

    def from_int(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> F_{q^e}."""
        return c % self.p

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    def generator(self) -> int:
        """The multiplicative generator used for the log tables."""
        return self._t.gen

    def degree(self, a) -> int:
        """[F_p(a) : F_p]."""
        if a == 0:
            raise ZeroInput("degree of zero")
        for d in range(1, self.n + 1):
            if self.n % d == 0 and self.frobenius_p(a, d) == a:
                return d
        raise AssertionError("unreachable")

    @functools.lru_cache(maxsize=None)
    def subfield(self, d: int) -> tuple[int, ...]:
        """Elements of F_{q^d} (requires d | e), sorted by encoding."""
        if self.e % d:
            raise ValueError(f"F_q^{d} is not a subfield of F_q^{self.e}")
        return tuple(a for a in range(self.order) if self.frobenius(a, d) == a)

    def digits(self, a) -> list[int]:
        return _decode(a, self.p, self.n)

    def from_digits(self, digits) -> int:
        digits = list(digits)
        if len(digits) != self.n or any(not 0 <= d < self.p for d in digits):
            raise ValueError(f"bad digit list {digits} for {self}")
        return _encode(digits, self.p)

    def elem(self, a) -> "FFElem":
        return FFElem(self, a)

    def embed(self, a, small: "FieldCtx") -> int:
        """Image of a in ``small`` under the embedding fixed by the least root."""
        if small.p != self.p or self.n % small.n:
            raise ValueError("no embedding")
        root = _least_root(self.p, self.n, small.n)
        out = 0
        power = 1
        for c in small.digits(a):
            if c:
                out = self.add(out, self.mul(self.from_int(c), power))
            power = self.mul(power, root)
        return out


def _identity(a):
    return a


@functools.lru_cache(maxsize=None)
def _least_root(p, n_big, n_small):
    big = FieldCtx(p, 1, n_big)
    f = conway_free_polynomial(p, n_small)
    for x in big.elements():
        acc = 0
        for c in reversed(f):
            acc = big.add(big.mul(acc, x), big.from_int(c))
        if acc == 0:
            return x
    raise AssertionError("defining polynomial has no root")


@functools.lru_cache(maxsize=None)
def field(p: int, r: int = 1, e: int = 1) -> FieldCtx:
    return FieldCtx(p, r, e)


@dataclass(frozen=True)
class FFElem:
    """Field element with operator overloading; convenience wrapper around the int encoding."""

    ctx: FieldCtx
    value: int

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.ctx, self.ctx.sub(o, self.value))

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.ctx, self.ctx.div(self.value, o))

    def __pow__(self, k: int):
        return FFElem(self.ctx, self.ctx.pow(self.value, k))

    def __bool__(self):
        return self.value != 0

    def inverse(self):
        return FFElem(self.ctx, self.ctx.inv(self.value))

    def digits(self):
        return self.ctx.digits(self.value)


def frobenius(x: FFElem, k: int) -> FFElem:
    return FFElem(x.ctx, x.ctx.frobenius(x.value, k))


def element_degree(x: FFElem) -> int:
    return x.ctx.degree(x.value)
