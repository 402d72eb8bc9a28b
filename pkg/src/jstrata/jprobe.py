"""Probe lattices jΛ0 (j in J_b(F)) inside a window, and the invariant profile on them.

For superbasic frames J/(J∩K) is infinite cyclic, generated by the linear
shift pi, so the probes are just the pi^l Λ0.  Otherwise a lattice is a
J-translate of Λ0 exactly when it is stable under tau_0 and tau_1, and the
probes are found by enumerating such lattices between two window lattices.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

from .errors import BadSpec, NotFound
from .isocrystal import Frame, residue_coords
from .lattice import Lattice, contains, dual, lattice_sum, mat_inverse, mat_mul
from .linalg import rank
from .quotient import DEFAULT_BUDGET, Window, enumerate_submodules


def lattice_label(M: Lattice) -> str:
    digest = hashlib.sha1(repr(M.key()).encode()).hexdigest()[:10]
    return f"v{M.volume()}:{digest}"


def _sort_key(M: Lattice):
    return (M.volume(), M.key())


@dataclass
class ProbeSet:
    frame: Frame
    window: int
    probes: list  # (label, Lattice)
    flags: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.probes)

    def __iter__(self):
        return iter(self.probes)

    def labels(self):
        return [lab for lab, _ in self.probes]

    def get(self, label) -> Lattice:
        for lab, P in self.probes:
            if lab == label:
                return P
        raise KeyError(label)

    def find(self, M: Lattice):
        for lab, P in self.probes:
            if P == M:
                return lab
        return None


def is_superbasic(fr: Frame) -> bool:
    if fr.kind == "superbasic-res":
        return True
    return fr.kind == "isoclinic-gl" and len(fr.slopes) == 1 and fr.slopes[0][2] == 1


def pi_power(fr: Frame, l: int, M: Lattice | None = None) -> Lattice:
    """pi^l M (default M = Λ0)."""
    M = M if M is not None else fr.standard()
    return fr.image(M, lambda v: fr.pi(v, l))


def _rational_scalars(fr: Frame):
    F = fr.ctx
    if fr.kind == "unitary-n0":
        return F.subfield(math.gcd(2, F.e))
    m, h = fr._uniform_slope()
    return F.subfield(math.gcd(h, F.e))


def self_dual_up_to_factor(fr: Frame, M: Lattice) -> bool:
    D = dual(M, fr.form)
    k, rem = divmod(D.volume() - M.volume(), M.h)
    # M^vee = eps^k M forces vol difference k*h
    return rem == 0 and D == M.scale(k)


def stable_window(fr: Frame, window: int) -> Window:
    """The window used for tau-stable enumeration: pi^{-w}Λ0 / pi^{w}Λ0, or eps-powers."""
    if fr.kind == "isoclinic-gl":
        return Window.between(pi_power(fr, -window), pi_power(fr, window))
    return Window.standard(fr.ctx, fr.h_total, -window, window)


def probe_set(fr: Frame, window: int, budget: int = DEFAULT_BUDGET) -> ProbeSet:
    if window < 0:
        raise ValueError("window must be nonnegative")
    if is_superbasic(fr):
        lats = [pi_power(fr, l) for l in range(-window, window + 1)]
        flags = {}
    else:
        if fr.kind == "superbasic-res":
            raise BadSpec("unreachable")
        W = stable_window(fr, window)
        ops = []
        if fr.kind != "unitary-n0":
            m, h = fr._uniform_slope()
            from .isocrystal import _bezout_pi

            a, _ = _bezout_pi(m, h)
            ops = [W.operator(fr.tau1, a)]
        keys = enumerate_submodules(W, ops, scalars=_rational_scalars(fr), budget=budget)
        lats = [W.lattice(k) for k in keys]
        if fr.kind == "unitary-n0":
            lats = [P for P in lats if unitary_vertex_type(fr, P) is not None]
    lats.sort(key=_sort_key)
    probes = [(lattice_label(P), P) for P in lats]
    flags = {}
    if fr.form is not None and fr.kind == "gsp4":
        flags = {lab: {"self_dual": self_dual_up_to_factor(fr, P)} for lab, P in probes}
    return ProbeSet(fr, window, probes, flags)


def unitary_vertex_type(fr: Frame, P: Lattice):
    """i with eps^i P^vee ⊂^1 P ⊂^{n-1} eps^{i-1} P^vee, or None."""
    D = dual(P, fr.form)
    n = P.h
    for i in range(-4 * n, 4 * n):
        low = D.scale(i)
        high = D.scale(i - 1)
        if contains(P, low) and contains(high, P):
            if P.volume() - low.volume() == -1 and high.volume() - P.volume() == -(n - 1):
                return i
    return None


@dataclass
class InvariantProfile:
    entries: list  # (label, Cochar or tuple of Cochars)

    def as_dict(self):
        return dict(self.entries)

    def __eq__(self, other):
        return isinstance(other, InvariantProfile) and self.entries == other.entries


def f_profile(fr: Frame, M: Lattice, probes: ProbeSet) -> InvariantProfile:
    return InvariantProfile([(lab, fr.inv(P, M)) for lab, P in probes])


def same_stratum(fr: Frame, M1: Lattice, M2: Lattice, probes: ProbeSet) -> bool:
    return f_profile(fr, M1, probes) == f_profile(fr, M2, probes)


def tau_closure(fr: Frame, M: Lattice, max_steps: int = 10 ** 4) -> Lattice:
    """Smallest lattice containing M that is stable under tau_0 and tau_1."""
    P = M
    for _ in range(max_steps):
        Q = lattice_sum(P, lattice_sum(fr.image(P, fr.tau0), fr.image(P, fr.tau1)))
        if Q == P:
            return P
        P = Q
    raise NotFound("tau-closure did not stabilize")


def normalize_in_orbit(fr: Frame, M: Lattice, search: int = 64):
    """Translate M by an element of J so that the minimal J-translate of Λ0 containing it is Λ0.

    Returns (translated lattice, v(det j)) where j Λ0 is that minimal lattice.
    """
    if is_superbasic(fr):
        h = fr.h_total if fr.kind != "superbasic-res" else fr.chains[0].length
        l = h * M.ceiling
        if not contains(pi_power(fr, l), M):
            raise NotFound("no pi-power lattice contains M")
        for _ in range(search * h):
            if contains(pi_power(fr, l + 1), M):
                l += 1
            else:
                return pi_power(fr, -l, M), l
        raise NotFound("search window exhausted")
    if fr.kind != "isoclinic-gl" or len(fr.slopes) != 1:
        raise BadSpec("normalize_in_orbit needs a superbasic or isoclinic GL frame")
    P = tau_closure(fr, M)
    j = _j_basis(fr, P)
    jinv = mat_inverse(j)
    Mn = Lattice(mat_mul(jinv, M.basis))
    return Mn, P.volume()


def _j_basis(fr: Frame, P: Lattice):
    """Matrix of j in J with j Λ0 = P (columns f_{i,k} = tau_1^k f_{i,0})."""
    m, h, l = fr.slopes[0]
    cols = P.columns()
    sub = [residue_coords(P, fr.tau1(c)) for c in cols]
    base = rank(fr.ctx, sub)
    chosen = []
    for c in cols:
        cand = sub + [residue_coords(P, x) for x in chosen] + [residue_coords(P, c)]
        if rank(fr.ctx, cand) == base + len(chosen) + 1:
            chosen.append(c)
        if len(chosen) == l:
            break
    if len(chosen) != l:
        raise NotFound("could not choose generators of P / tau_1 P")
    hcols = [None] * fr.h_total
    for i, f in enumerate(chosen):
        v = f
        for k in range(h):
            idx, q = fr.coord(i, k)
            hcols[idx] = v
            v = fr.tau1(v)
    return [list(r) for r in zip(*hcols)]
