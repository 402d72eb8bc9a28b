"""GSp4, slope 1/2: points jΛ0 versus projective lines anchored at j<e1, e2, f0, f1>."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..errors import AnchorNotFound, NotInADLV
from ..isocrystal import Frame, in_adlv, make_frame
from ..jprobe import ProbeSet, lattice_label, probe_set, self_dual_up_to_factor
from ..lattice import Lattice, contains, dual, lattice_sum
from ..quotient import Window, enumerate_submodules

MU = (1, 1, 0, 0)


@dataclass(frozen=True)
class StratumDescriptor:
    kind: str  # "point" or "line"
    anchor: str  # probe label

    def as_dict(self):
        return {"kind": self.kind, "anchor": self.anchor}


def gsp4_frame(p: int = 2, e: int = 2) -> Frame:
    return make_frame({"kind": "gsp4", "p": p, "e": e})


def in_gsp4_adlv(fr: Frame, M: Lattice) -> bool:
    return in_adlv(fr, M, MU) and self_dual_up_to_factor(fr, M)


def gsp4_classify(fr: Frame, M: Lattice, probes: ProbeSet | None = None) -> StratumDescriptor:
    if not in_gsp4_adlv(fr, M):
        raise NotInADLV("not a Dieudonne lattice that is self-dual up to a factor")
    T = fr.image(M, fr.tau0)
    if T == M:
        return StratumDescriptor("point", lattice_label(M))
    A = lattice_sum(M, T)
    lab = lattice_label(A)
    if probes is not None and probes.find(A) is None:
        raise AnchorNotFound(f"{lab} is not a probe at window {probes.window}")
    return StratumDescriptor("line", lab)


def line_member(fr: Frame, x: int) -> Lattice:
    """<e1 + [x] f0, e2, f1, f2>."""
    return Lattice.generated([fr.vec([("e", 1), ("f", 0, x)]), fr.e("e", 2), fr.e("f", 1), fr.e("f", 2)])


def line_anchor(fr: Frame) -> Lattice:
    return Lattice.generated([fr.e("e", 1), fr.e("e", 2), fr.e("f", 0), fr.e("f", 1)])


def adlv_members(fr: Frame, window: int, budget: int = 10 ** 6) -> list:
    """All lattices between eps^{-w}Λ0 and eps^{w}Λ0 in the ADLV, sorted canonically."""
    W = Window.standard(fr.ctx, 4, -window, window)
    ops = [W.operator(fr.phi, 1), W.operator(fr.V, -1)]
    keys = enumerate_submodules(W, ops, budget=budget)
    out = [W.lattice(k) for k in keys]
    out = [M for M in out if in_gsp4_adlv(fr, M)]
    out.sort(key=lambda M: (M.volume(), M.key()))
    return out


def is_line_anchor(fr: Frame, A: Lattice) -> bool:
    """eps^k A^v ⊂^2 A with Phi and V zero on the quotient (the shape of j<e1, e2, f0, f1>)."""
    D = dual(A, fr.form)
    k, r = divmod(A.volume() - D.volume() + 2, 4)
    if r or not contains(A, D.scale(k)) or D.scale(k).volume() - A.volume() != 2:
        return False
    low = D.scale(k)
    return contains(low, fr.image(A, fr.phi)) and contains(low, fr.image(A, fr.V))


def anchor_floor(fr: Frame, A: Lattice) -> Lattice:
    """The lattice eps^k A^v of index 2 in an anchor."""
    D = dual(A, fr.form)
    k = (A.volume() - D.volume() + 2) // 4
    return D.scale(k)


def _partition(items: dict) -> set:
    groups: dict = {}
    for name, key in items.items():
        groups.setdefault(key, set()).add(name)
    return {frozenset(g) for g in groups.values()}


def gsp4_survey(p: int = 2, e: int = 2, window: int = 1, budget: int = 10 ** 6) -> dict:
    t0 = time.time()
    fr = gsp4_frame(p, e)
    probes = probe_set(fr, window, budget=budget)
    members = adlv_members(fr, window, budget=budget)
    desc = {}
    prof = {}
    for M in members:
        lab = lattice_label(M)
        desc[lab] = gsp4_classify(fr, M, probes)
        prof[lab] = tuple(fr.inv(P, M).entries for _, P in probes)
    same = _partition({k: (d.kind, d.anchor) for k, d in desc.items()}) == _partition(prof)

    points = [P for lab, P in probes if probes.flags[lab]["self_dual"]]
    anchors = [P for _, P in probes if is_line_anchor(fr, P)]
    lo, hi = fr.standard(1 - window), fr.standard(window)
    # only count where every lattice between the anchor's floor and the anchor lies in the window
    inner = [A for A in anchors if contains(anchor_floor(fr, A), hi)]
    pts_per_line = sorted({sum(1 for Q in points if contains(A, Q) and Q.volume() - A.volume() == 1) for A in inner})
    interior = [Q for Q in points if contains(lo, Q) and contains(Q, hi)]
    lines_per_point = sorted({sum(1 for A in anchors if contains(A, Q) and Q.volume() - A.volume() == 1) for Q in interior})

    # line members: profile entries at the rational points of their anchor
    line_entries = set()
    for lab, d in desc.items():
        if d.kind != "line":
            continue
        M = next(M for M in members if lattice_label(M) == lab)
        A = probes.get(d.anchor)
        for Q in points:
            if contains(A, Q) and Q.volume() - A.volume() == 1:
                line_entries.add(fr.inv(Q, M).entries)
    kinds = {}
    for d in desc.values():
        kinds[d.kind] = kinds.get(d.kind, 0) + 1
    return {
        "p": p,
        "e": e,
        "window": window,
        "probes": len(probes),
        "members": len(members),
        "kinds": kinds,
        "groupings_equal": same,
        "profile_groups": len(_partition(prof)),
        "line_anchors": len(anchors),
        "points_per_line": pts_per_line,
        "lines_per_point": lines_per_point,
        "line_entries_at_anchor_points": sorted(line_entries),
        "seconds": round(time.time() - t0, 2),
    }
