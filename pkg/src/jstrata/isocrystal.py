"""Isocrystal frames (N, b sigma) for the standard representatives b.

A frame is a direct sum of *chains*.  Chain ``c`` has length ``L`` and basis
vectors ``f_{c,j}`` for all integers ``j`` with ``f_{c,j+L} = t f_{c,j}``; the
ambient coordinates are ``f_{c,base}, ..., f_{c,base+L-1}``.  Every operator
used here (Phi = b sigma, V, pi, tau_0, tau_1) sends ``x f_{c,j}`` to
``sigma^k(x) f_{c',j+s}``, so all of them are stored as monomial tables.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field

from .errors import BadSlope, BadSpec, DepthExhausted, NotDieudonne, SingularMatrix
from .ffield import FieldCtx, field
from .lattice import Cochar, Form, Lattice, member, relative_position, solve_coords
from .linalg import rank
from .series import Series


@dataclass(frozen=True)
class Chain:
    name: str
    length: int
    base: int
    offset: int
    block: int = 0
    summand: int = 0
    phi_target: int = 0
    phi_shift: int = 0


def _bezout_pi(m: int, h: int):
    """(a, a') with a minimal positive and a*m + a'*h = 1."""
    for a in range(1, h + 1):
        if (a * m - 1) % h == 0:
            return a, (1 - a * m) // h
    raise BadSlope(f"gcd({m},{h}) != 1")


@dataclass(eq=False)
class Frame:
    kind: str
    ctx: FieldCtx
    chains: tuple
    slopes: tuple = ()
    d: int = 1
    m_tau: tuple = ()
    form: Form | None = None
    tau_sigma: int = 0  # unitary frames: tau = sigma^tau_sigma coordinatewise
    _tables: dict = dc_field(default_factory=dict, repr=False)

    @property
    def h_total(self) -> int:
        return sum(c.length for c in self.chains)

    @property
    def blocks(self) -> list[list[int]]:
        out = {}
        for c in self.chains:
            out.setdefault(c.block, []).extend(range(c.offset, c.offset + c.length))
        return [out[k] for k in sorted(out)]

    def chain(self, name: str) -> int:
        for n, c in enumerate(self.chains):
            if c.name == name:
                return n
        raise KeyError(name)

    # -- vectors --

    def coord(self, c: int, j: int):
        ch = self.chains[c]
        q, r = divmod(j - ch.base, ch.length)
        return ch.offset + r, q

    def where(self, idx: int):
        """(chain, j) of ambient coordinate idx."""
        for n, ch in enumerate(self.chains):
            if ch.offset <= idx < ch.offset + ch.length:
                return n, ch.base + idx - ch.offset
        raise IndexError(idx)

    def zero(self):
        return [Series.zero(self.ctx)] * self.h_total

    def vec(self, terms) -> list:
        """Vector sum of x * f_{name,j} over terms ((name, j, x) or (name, j))."""
        v = self.zero()
        for t in terms:
            name, j = t[0], t[1]
            x = t[2] if len(t) > 2 else 1
            idx, q = self.coord(self.chain(name), j)
            v[idx] = v[idx] + Series.monomial(self.ctx, x, q)
        return v

    def e(self, name: str, j: int, x: int = 1):
        return self.vec([(name, j, x)])

    def standard(self, k: int = 0) -> Lattice:
        return Lattice.standard(self.ctx, self.h_total, k)

    # -- monomial operator tables --

    def _phi_table(self, k: int):
        key = ("phi", k)
        if key in self._tables:
            return self._tables[key]
        if self.kind == "unitary-n0":
            raise BadSpec("unitary frames carry tau and a form, not Phi")
        table = []
        for idx in range(self.h_total):
            c, j = self.where(idx)
            q_tot = 0
            if k >= 0:
                for _ in range(k):
                    ch = self.chains[c]
                    c, j = ch.phi_target, j + ch.phi_shift
            else:
                pre = {ch.phi_target: n for n, ch in enumerate(self.chains)}
                for _ in range(-k):
                    c = pre[c]
                    j = j - self.chains[c].phi_shift
            idx2, q = self.coord(c, j)
            table.append((idx2, q + q_tot))
        self._tables[key] = table
        return table

    def _pi_table(self, k: int, summand=None):
        key = ("pi", k, summand)
        if key in self._tables:
            return self._tables[key]
        table = []
        for idx in range(self.h_total):
            c, j = self.where(idx)
            if summand is None or self.chains[c].summand == summand:
                j += k
            table.append(self.coord(c, j))
        self._tables[key] = table
        return table

    @staticmethod
    def _apply_table(v, table, sig: int):
        out = [None] * len(v)
        for idx, s in enumerate(v):
            idx2, q = table[idx]
            s2 = s.sigma(sig) if sig else s
            out[idx2] = s2.shift(q)
        return out

    def phi(self, v, k: int = 1):
        return self._apply_table(v, self._phi_table(k), k)

    def V(self, v):
        return [s.shift(1) for s in self.phi(v, -1)]

    def pi(self, v, k: int = 1, summand=None):
        """The linear element of J shifting every chain index by k."""
        return self._apply_table(v, self._pi_table(k, summand), 0)

    def _uniform_slope(self):
        if self.kind == "superbasic-res":
            m = sum(self.m_tau)
            return m, self.d * self.chains[0].length
        if len({(m, h) for m, h, _ in self.slopes}) != 1:
            raise BadSpec("tau_0/tau_1 need an isoclinic frame")
        m, h, _ = self.slopes[0]
        return m, h

    def tau0(self, v, k: int = 1):
        if self.kind == "unitary-n0":
            return [s.sigma(self.tau_sigma * k) for s in v]
        m, h = self._uniform_slope()
        return [s.shift(-m * k) for s in self.phi(v, h * k)]

    def tau1(self, v, k: int = 1):
        m, h = self._uniform_slope()
        a, a2 = _bezout_pi(m, h)
        return [s.shift(a2 * k) for s in self.phi(v, a * k)]

    def tau(self, v):
        """The unitary tau = eps^{-1} F^2, i.e. sigma^2 on coordinates."""
        if self.kind != "unitary-n0":
            raise BadSpec("tau is defined on unitary frames")
        return self.tau0(v)

    def apply_word(self, word, v):
        """Apply the tokens of ``word`` to v, first token first."""
        for tok in parse_word(word):
            name, arg = tok
            if name == "Phi":
                v = self.phi(v)
            elif name == "PhiInv":
                v = self.phi(v, -1)
            elif name == "V":
                v = self.V(v)
            elif name == "Pi":
                v = self.pi(v, 1, arg)
            elif name == "PiInv":
                v = self.pi(v, -1, arg)
            elif name == "Tau0":
                v = self.tau0(v)
            elif name == "Tau1":
                v = self.tau1(v)
            elif name == "Eps":
                v = [s.shift(arg) for s in v]
        return v

    def image(self, M: Lattice, op) -> Lattice:
        """op(M) for an additive, semilinear-bijective operator op on vectors."""
        return Lattice.generated([op(c) for c in M.columns()])

    # -- relative position respecting the block (Res) structure --

    def inv(self, M1: Lattice, M2: Lattice):
        blocks = self.blocks
        if len(blocks) == 1:
            return relative_position(M1, M2)
        return tuple(relative_position(restrict(M1, b), restrict(M2, b)) for b in blocks)


def restrict(M: Lattice, coords) -> Lattice:
    """The summand of a lattice that decomposes along ``coords``."""
    coords = list(coords)
    other = [i for i in range(M.h) if i not in coords]
    H = M.hnf
    for i in coords:
        for j in other:
            if H[i][j].coeffs or H[j][i].coeffs:
                raise BadSpec("lattice does not decompose along the frame blocks")
    return Lattice([[H[i][j] for j in coords] for i in coords], _hnf=True)


_TOKEN = re.compile(r"^(Phi|PhiInv|V|Tau0|Tau1|Pi|PiInv)(?:\((\d+)\))?$|^Eps\^?(-?\d+)?$")


def parse_word(word):
    if isinstance(word, str):
        word = word.replace("∘", " ").replace(",", " ").split()
    out = []
    for tok in word:
        if isinstance(tok, tuple):
            out.append(tok)
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise BadSpec(f"unknown operator token {tok!r}")
        if m.group(1):
            out.append((m.group(1), int(m.group(2)) if m.group(2) else None))
        else:
            out.append(("Eps", int(m.group(3)) if m.group(3) else 1))
    return out


def apply_word(fr: Frame, w, v):
    return fr.apply_word(w, v)


# ---------------------------------------------------------------------------
# construction


def make_frame(spec: dict) -> Frame:
    kind = spec.get("kind")
    p, r, e = spec.get("p", 2), spec.get("r", 1), spec.get("e", 1)
    F = field(p, r, e)
    if kind == "superbasic-res":
        if "slopes" in spec:
            m, h, _ = spec["slopes"][0]
        else:
            m, h = spec["m"], spec["h"]
        d = spec.get("d", len(spec["m_tau"]) if "m_tau" in spec else 1)
        m_tau = tuple(spec.get("m_tau", [m] + [0] * (d - 1)))
        if len(m_tau) != d or sum(m_tau) != m:
            raise BadSpec("m_tau must have d entries summing to m")
        if math.gcd(m, h) != 1:
            raise BadSlope(f"gcd({m},{h}) != 1")
        chains = tuple(
            Chain(
                name="e" if d == 1 else f"e{tau}",
                length=h,
                base=1,
                offset=tau * h,
                block=tau,
                phi_target=(tau + 1) % d,
                phi_shift=m_tau[(tau + 1) % d],
            )
            for tau in range(d)
        )
        fr = Frame(kind, F, chains, slopes=((m, h, 1),), d=d, m_tau=m_tau)
    elif kind == "isoclinic-gl":
        slopes = tuple(tuple(s) for s in spec["slopes"])
        chains = []
        off = 0
        for z, (m, h, l) in enumerate(slopes):
            if h < 1 or l < 1 or m < 0:
                raise BadSpec(f"bad slope datum {(m, h, l)}")
            if math.gcd(m, h) != 1:
                raise BadSlope(f"gcd({m},{h}) != 1")
            for i in range(l):
                n = len(chains)
                chains.append(Chain(f"e{z + 1}{i + 1}", h, 0, off, 0, z, n, m))
                off += h
        fr = Frame(kind, F, tuple(chains), slopes=slopes)
    elif kind == "gsp4":
        chains = (Chain("e", 2, 1, 0, 0, 0, 0, 1), Chain("f", 2, 1, 2, 0, 0, 1, 1))
        z, o = Series.zero(F), Series.one(F)
        gram = [[z, z, z, o], [z, z, o, z], [z, -o, z, z], [-o, z, z, z]]
        fr = Frame(kind, F, chains, slopes=((1, 2, 2),), form=Form(gram, 0, "alternating"))
    elif kind == "unitary-n0":
        n = spec["n"]
        if n < 1:
            raise BadSpec("n must be positive")
        chains = tuple(Chain(f"g{i + 1}", 1, 0, i, 0, 0, i, 0) for i in range(n))
        z, eps = Series.zero(F), Series.t(F)
        gram = [[(eps if i < n - 1 else Series.one(F)) if i == j else z for j in range(n)] for i in range(n)]
        fr = Frame(kind, F, chains, form=Form(gram, 1, "hermitian"), tau_sigma=2)
    else:
        raise BadSpec(f"unknown frame kind {kind!r}")
    _check_slopes(fr)
    return fr


def _check_slopes(fr: Frame):
    """Phi^{h_z} = eps^{m_z} on every basis vector of summand z."""
    if fr.kind == "unitary-n0":
        return
    m, h = (sum(fr.m_tau), fr.d * fr.chains[0].length) if fr.kind == "superbasic-res" else (None, None)
    for n, ch in enumerate(fr.chains):
        if fr.kind != "superbasic-res":
            m, h, _ = fr.slopes[ch.summand]
        v = fr.e(ch.name, ch.base)
        w = fr.phi(v, h)
        if any(not (a.shift(m) - b).is_zero() for a, b in zip(v, w)):
            raise BadSlope("constructed operator has the wrong Newton slope")


# ---------------------------------------------------------------------------
# Dieudonne lattices


def is_dieudonne(fr: Frame, M: Lattice) -> bool:
    cols = M.columns()
    return all(member(fr.phi(c), M) for c in cols) and all(member(fr.V(c), M) for c in cols)


def in_adlv(fr: Frame, M: Lattice, mu) -> bool:
    """relative_position(M, Phi M) == mu (mu: Cochar, int list, or per-block tuple of those)."""
    got = fr.inv(M, fr.image(M, fr.phi))
    if isinstance(got, Cochar):
        return got == _as_cochar(mu)
    return got == tuple(_as_cochar(x) for x in mu)


def _as_cochar(mu):
    return mu if isinstance(mu, Cochar) else Cochar(tuple(mu))


def residue_coords(M: Lattice, v) -> list:
    """Image of v in M / eps M in the coordinates of M's Hermite basis."""
    x = solve_coords(v, M)
    out = []
    for s in x:
        if s.coeffs and s.v_min < 0:
            raise ValueError("vector not in the lattice")
        out.append(s.coeff(0))
    return out


def a_number(fr: Frame, M: Lattice) -> int:
    if not is_dieudonne(fr, M):
        raise NotDieudonne("a-number needs a Dieudonne lattice")
    rows = []
    for c in M.columns():
        rows.append(residue_coords(M, fr.phi(c)))
        rows.append(residue_coords(M, fr.V(c)))
    return M.h - rank(fr.ctx, rows)


def dieudonne_closure(fr: Frame, v, depth: int | None = None) -> Lattice:
    """Smallest Phi- and V-stable lattice containing v."""
    if all(s.is_zero() for s in v):
        raise ValueError("closure of the zero vector")
    if depth is None:
        depth = 2 * fr.h_total * max(c.length for c in fr.chains)
    gens = [list(v)]
    a, b = list(v), list(v)
    for _ in range(depth):
        a, b = fr.phi(a), fr.V(b)
        gens += [a, b]
    try:
        M = Lattice.generated(gens)
    except SingularMatrix as exc:
        raise DepthExhausted(f"orbit of depth {depth} does not span a lattice") from exc
    if not is_dieudonne(fr, M):
        raise DepthExhausted(f"span not stable at depth {depth}")
    return M
