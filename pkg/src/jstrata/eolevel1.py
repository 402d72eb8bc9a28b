"""Truncation of level 1 (the EO invariant) and the Bruhat invariant for GL_h, minuscule mu.

Permutations are tuples w with w[i-1] = w(i) acting by w e_i = e_{w(i)}.
Products compose right to left: (a*b)(i) = a(b(i)).

The reported convention is the one for the lower triangular Borel, where a
minuscule mu is dominant in the order (0^(h-m), 1^m).  Since the simple
reflections s_i = (i, i+1) are the same for both Borels, lengths are just
inversion counts and only the ordering of mu changes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import AmbiguousMatch, NoMatch, NotBT1, NotMinuscule
from .ffield import FieldCtx
from .isocrystal import Frame, residue_coords
from .lattice import Lattice
from .linalg import kernel, rank, rref, span_key


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class WeylElt:
    perm: tuple

    @classmethod
    def identity(cls, h: int) -> "WeylElt":
        return cls(tuple(range(1, h + 1)))

    @classmethod
    def longest(cls, h: int) -> "WeylElt":
        return cls(tuple(range(h, 0, -1)))

    @classmethod
    def simple(cls, h: int, i: int) -> "WeylElt":
        p = list(range(1, h + 1))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(tuple(p))

    @classmethod
    def from_cycles(cls, text: str, h: int) -> "WeylElt":
        p = list(range(1, h + 1))
        for cyc in parse_cycles(text):
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                p[a - 1] = b
        return cls(tuple(p))

    @property
    def h(self) -> int:
        return len(self.perm)

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return WeylElt(tuple(self.perm[j - 1] for j in other.perm))

    def inverse(self) -> "WeylElt":
        inv = [0] * self.h
        for i, j in enumerate(self.perm, 1):
            inv[j - 1] = i
        return WeylElt(tuple(inv))

    @cached_property
    def length(self) -> int:
        p = self.perm
        return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])

    def cycles(self) -> str:
        return format_cycles(self.perm)

    def __repr__(self):
        return f"WeylElt({self.cycles()})"


def parse_cycles(text: str):
    text = text.replace(" ", "")
    if text in ("", "()", "id", "e"):
        return []
    out = []
    for part in text.strip("()").split(")("):
        if "," in part:
            out.append([int(x) for x in part.split(",")])
        else:
            out.append([int(c) for c in part])
    return out


def format_cycles(perm) -> str:
    """Cycle notation, each cycle from its least element; single digits are not separated."""
    seen = set()
    parts = []
    h = len(perm)
    for i in range(1, h + 1):
        if i in seen or perm[i - 1] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i - 1]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j - 1]
        sep = "" if h < 10 else ","
        parts.append("(" + sep.join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# ---------------------------------------------------------------------------
# mu, W_M and minimal coset representatives


def normalize_mu(mu, h: int | None = None) -> tuple:
    """Minuscule mu as a 0/1 tuple in the reporting order (0^(h-m), 1^m)."""
    mu = tuple(getattr(mu, "entries", mu))
    if h is not None and len(mu) != h:
        raise NotMinuscule(f"mu has {len(mu)} entries, expected {h}")
    lo = min(mu)
    shifted = [x - lo for x in mu]
    if any(x not in (0, 1) for x in shifted):
        raise NotMinuscule(f"{mu} is not minuscule")
    m = sum(shifted)
    return (0,) * (len(mu) - m) + (1,) * m


def _blocks(mu):
    return [[i + 1 for i, x in enumerate(mu) if x == v] for v in sorted(set(mu))]


def levi_generators(mu) -> list:
    """Simple reflections of W_{M_mu}."""
    h = len(mu)
    return [WeylElt.simple(h, i) for i in range(1, h) if mu[i - 1] == mu[i]]


def longest_in_levi(mu) -> WeylElt:
    p = list(range(1, len(mu) + 1))
    for b in _blocks(mu):
        for i, j in zip(b, reversed(b)):
            p[i - 1] = j
    return WeylElt(tuple(p))


def x_mu(mu) -> WeylElt:
    return WeylElt.longest(len(mu)) * longest_in_levi(mu)


def in_levi(w: WeylElt, mu) -> bool:
    return all(mu[w(i) - 1] == mu[i - 1] for i in range(1, w.h + 1))


def mu_weyl_set(mu, h: int | None = None) -> list:
    """Shortest representatives of the cosets W_M x (sigma acts trivially for split GL_h)."""
    mu = normalize_mu(mu, h)
    h = len(mu)
    out = []
    for perm in itertools.permutations(range(1, h + 1)):
        w = WeylElt(perm)
        inv = w.inverse()
        # shortest in W_M w iff w^{-1} is increasing on each block of M
        if all(all(inv(a) < inv(b) for a, b in zip(blk, blk[1:])) for blk in _blocks(mu)):
            out.append(w)
    out.sort(key=lambda w: (w.length, w.perm))
    return out


# ---------------------------------------------------------------------------
# residue modules and canonical filtrations


@dataclass
class ResidueModule:
    """D = M / eps M with sigma-linear Fbar and sigma^{-1}-linear Vbar, given on a basis."""

    ctx: FieldCtx
    fbar: list  # fbar[j] = image of basis vector j
    vbar: list

    @property
    def h(self) -> int:
        return len(self.fbar)

    def check(self):
        F = self.ctx
        imF = rref(F, self.fbar)[0]
        imV = rref(F, self.vbar)[0]
        kerF = _semilinear_kernel(F, self.fbar, 1)
        kerV = _semilinear_kernel(F, self.vbar, -1)
        if span_key(F, imF) != span_key(F, kerV) or span_key(F, imV) != span_key(F, kerF):
            raise NotBT1("image of one operator is not the kernel of the other")

    def image_f(self, U):
        return _semilinear_image(self.ctx, self.fbar, U, 1)

    def preimage_v(self, U):
        return _semilinear_preimage(self.ctx, self.vbar, U, -1)


def _frob_vec(F, x, k):
    return [F.frobenius(c, k) if c else 0 for c in x]


def _apply(F, images, x, s):
    out = [0] * len(images)
    for c, img in zip(x, images):
        if c:
            c = F.frobenius(c, s)
            out = [F.add(a, F.mul(c, b)) for a, b in zip(out, img)]
    return out


def _semilinear_image(F, images, U, s):
    rows = [_apply(F, images, u, s) for u in U]
    return rref(F, [r for r in rows if any(r)])[0] if rows else []


def _semilinear_kernel(F, images, s):
    # op(x) = sum s(x_j) img_j = 0  <=>  y = frob^s(x) in ker of the matrix with rows img_j
    cols = [list(c) for c in zip(*images)]
    K = kernel(F, cols, len(images))
    return rref(F, [_frob_vec(F, y, -s) for y in K])[0] if K else []


def _semilinear_preimage(F, images, U, s):
    h = len(images)
    if not U:
        return _semilinear_kernel(F, images, s)
    R, piv = rref(F, U)
    reduced = []
    for img in images:
        x = list(img)
        for r, c in zip(R, piv):
            if x[c]:
                f = x[c]
                x = [F.sub(a, F.mul(f, b)) for a, b in zip(x, r)]
        reduced.append(x)
    cols = [list(c) for c in zip(*reduced)]
    K = kernel(F, cols, h)
    return rref(F, [_frob_vec(F, y, -s) for y in K])[0] if K else []


def canonical_filtration(D: ResidueModule, check: bool = True):
    """Coarsest flag stable under U -> Fbar(U) and U -> Vbar^{-1}(U).

    Returns a list of (dim, rows) sorted by dimension, starting with 0 and ending with D.
    """
    if check:
        D.check()
    F = D.ctx
    h = D.h
    full = [[1 if i == j else 0 for j in range(h)] for i in range(h)]
    members = {span_key(F, []): [], span_key(F, full): full}
    todo = list(members.values())
    while todo:
        U = todo.pop()
        for W in (D.image_f(U), D.preimage_v(U)):
            k = span_key(F, W)
            if k not in members:
                members[k] = [list(r) for r in k]
                todo.append(members[k])
    flag = sorted(((len(k), list(map(list, k))) for k in members), key=lambda x: x[0])
    dims = [d for d, _ in flag]
    if len(set(dims)) != len(dims):
        raise NotBT1("canonical filtration is not a flag")
    return flag


def filtration_signature(D: ResidueModule):
    """For each flag member: (dim, index of Fbar(member), index of Vbar^{-1}(member)) in the flag."""
    F = D.ctx
    flag = canonical_filtration(D)
    pos = {span_key(F, rows): n for n, (_, rows) in enumerate(flag)}
    sig = []
    for d, rows in flag:
        sig.append((d, pos[span_key(F, D.image_f(rows))], pos[span_key(F, D.preimage_v(rows))]))
    return tuple(sig)


def lattice_residue_module(fr: Frame, M: Lattice) -> ResidueModule:
    cols = M.columns()
    fbar = [residue_coords(M, fr.phi(c)) for c in cols]
    vbar = [residue_coords(M, fr.V(c)) for c in cols]
    return ResidueModule(fr.ctx, fbar, vbar)


def model_residue_module(F: FieldCtx, w: WeylElt, mu) -> ResidueModule:
    """Residue module of w tau_mu = w x_mu eps^mu acting on the standard lattice."""
    mu = normalize_mu(mu)
    h = len(mu)
    pi = w * x_mu(mu)
    fbar = [[0] * h for _ in range(h)]
    vbar = [[0] * h for _ in range(h)]
    for i in range(1, h + 1):
        if mu[i - 1] == 0:
            fbar[i - 1][pi(i) - 1] = 1
        else:
            vbar[pi(i) - 1][i - 1] = 1
    return ResidueModule(F, fbar, vbar)


_SIG_CACHE: dict = {}


def model_signatures(F: FieldCtx, mu) -> dict:
    mu = normalize_mu(mu)
    key = (F.p, F.r, F.e, mu)
    if key not in _SIG_CACHE:
        table = {}
        for w in mu_weyl_set(mu):
            table.setdefault(filtration_signature(model_residue_module(F, w, mu)), []).append(w)
        _SIG_CACHE[key] = table
    return _SIG_CACHE[key]


def trunc_level1(fr: Frame, M: Lattice, mu) -> WeylElt:
    mu = normalize_mu(mu, M.h)
    D = lattice_residue_module(fr, M)
    m = sum(mu)
    if rank(fr.ctx, D.fbar) != M.h - m:
        raise NotMinuscule("lattice is not in the given ADLV")
    sig = filtration_signature(D)
    hits = model_signatures(fr.ctx, mu).get(sig, [])
    if not hits:
        raise NoMatch("no element of the coset set has this filtration type")
    if len(hits) > 1:
        raise AmbiguousMatch(f"{len(hits)} elements share this filtration type")
    return hits[0]


# ---------------------------------------------------------------------------
# Bruhat invariant


def bruhat_invariant(w: WeylElt, mu) -> WeylElt:
    """Shortest element of W_M w (x_mu W_M x_mu^{-1}), by length-reducing descent."""
    mu = normalize_mu(mu, w.h)
    left = levi_generators(mu)
    x = x_mu(mu)
    xi = x.inverse()
    right = [x * s * xi for s in left]
    cur = w
    improved = True
    while improved:
        improved = False
        for s in left:
            c = s * cur
            if c.length < cur.length:
                cur, improved = c, True
        for s in right:
            c = cur * s
            if c.length < cur.length:
                cur, improved = c, True
    return cur


def double_coset(w: WeylElt, mu) -> set:
    """The whole double coset (for checks on small h)."""
    mu = normalize_mu(mu, w.h)
    left = levi_generators(mu)
    x = x_mu(mu)
    right = [x * s * x.inverse() for s in left]
    seen = {w}
    todo = [w]
    while todo:
        c = todo.pop()
        for n in [s * c for s in left] + [c * s for s in right]:
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return seen


# ---------------------------------------------------------------------------
# the GL_9 example


def gl9_frame(e: int = 6, p: int = 2):
    from .isocrystal import make_frame

    return make_frame({"kind": "superbasic-res", "m": 4, "h": 9, "p": p, "e": e})


GL9_MU = (0,) * 5 + (1,) * 4


def gl9_lattice(fr: Frame, c: int = 0, d: int = 0) -> Lattice:
    """<e1 + c e3, e2 + d e4, e_i (i >= 5)>; c = d = 0 gives the lattice of the chart {1,2,5,6,...}."""
    cols = [fr.vec([("e", 1), ("e", 3, c)]) if c else fr.e("e", 1),
            fr.vec([("e", 2), ("e", 4, d)]) if d else fr.e("e", 2)]
    cols += [fr.e("e", i) for i in range(5, 14)]
    return Lattice.generated(cols)
