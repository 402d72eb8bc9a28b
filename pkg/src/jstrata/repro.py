"""The ten acceptance checks, each returning a CheckResult."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .casestudies import gelfand_serganova as gs
from .casestudies import gsp4
from .casestudies.hermitian import hermitian_count, psi, theta_closed, theta_rec
from .eolevel1 import GL9_MU, bruhat_invariant, gl9_frame, gl9_lattice, trunc_level1
from .errors import DepthExhausted
from .isocrystal import a_number, dieudonne_closure, make_frame
from .jprobe import f_profile, normalize_in_orbit, pi_power, probe_set
from .lattice import (
    Cochar,
    Form,
    Lattice,
    contains,
    dual,
    dual_standard,
    elementary_divisors,
    identity,
    intersect,
    lattice_sum,
    relative_position,
)
from .ffield import field as finite_field
from .quotient import Window, enumerate_submodules
from .randgen import elementary_divisors_oracle, iwahori_translate, random_invertible, random_mu
from .semimodule import (
    SemiModuleChart,
    agen_box,
    agen_char_box,
    chart_of_lattice,
    chart_to_mu,
    lattice_box,
    mu_lattice,
    mu_to_chart,
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name} ({self.seconds:.1f}s)"

    def as_dict(self):
        return {"number": self.number, "name": self.name, "passed": self.passed, "seconds": round(self.seconds, 2), "detail": self.detail}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.time()
        res = fn(*args, **kwargs)
        res.seconds = time.time() - t
        limit = res.detail.get("time_limit")
        if limit is not None and res.seconds >= limit:
            res.passed = False
            res.detail["over_time"] = True
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def check_minor_lists() -> CheckResult:
    rep = gs.gs_minor_lists()
    ok = (
        rep["L_A1"] == 29
        and rep["rank_A1"] == 29
        and rep["L_A0"] == rep["L_B"] == 17
        and rep["rank_A0"] == rep["rank_B"] == 17
        and rep["lists_equal"]
        and rep["collinear_triples"] == 35 - rep["L_A1"]
    )
    rep["time_limit"] = 5
    return CheckResult(1, "thin Schubert cell minor lists", ok, rep)


@_timed
def check_cauchy_binet(trials: int = 20, seed: int = 0) -> CheckResult:
    rep = gs.cauchy_binet_check(trials=trials, p=2, seed=seed)
    return CheckResult(2, "Cauchy-Binet for random phi over F_2", rep["passed"] and rep["checked"] == 35 * trials, rep)


@_timed
def check_hermitian() -> CheckResult:
    cases = [(p, m) for p in (2, 3) for m in (2, 3, 4)] + [(5, 2)]
    brute = {f"{p},{m}": (hermitian_count(p, m), theta_closed(p, m)) for p, m in cases}
    ok = all(a == b for a, b in brute.values())
    base = all(theta_closed(p, 2) == p + 1 for p in (2, 3, 5, 7))
    rec = all(theta_closed(p, m) == theta_rec(p, m) and theta_closed(p, m) > psi(p, m) for p in (2, 3, 5, 7) for m in range(2, 13))
    detail = {"brute_vs_closed": brute, "theta2_is_p_plus_1": base, "recursion_and_bound": rec, "time_limit": 30}
    return CheckResult(3, "hermitian point counts", ok and base and rec, detail)


@_timed
def check_gl9(e: int = 6) -> CheckResult:
    fr = gl9_frame(e=e)
    F = fr.ctx
    c = F.generator()
    d = F.pow(c, 5)
    assert F.frobenius(d, 2) != c
    M1 = gl9_lattice(fr)
    M2 = gl9_lattice(fr, c, d)
    ch1, ch2 = chart_of_lattice(fr, M1), chart_of_lattice(fr, M2)
    A1 = SemiModuleChart(9, ((1, 2, 5, 6, 7, 8, 9, 12, 13),))
    w1, w2 = trunc_level1(fr, M1, GL9_MU), trunc_level1(fr, M2, GL9_MU)
    b1, b2 = bruhat_invariant(w1, GL9_MU), bruhat_invariant(w2, GL9_MU)
    ps = probe_set(fr, 2)
    same_profile = f_profile(fr, M1, ps) == f_profile(fr, M2, ps)
    detail = {
        "chart": list(ch1.minima[0]),
        "charts_equal": ch1 == ch2,
        "eo": [w1.cycles(), w2.cycles()],
        "bruhat": [b1.cycles(), b2.cycles()],
        "profiles_equal_window2": same_profile,
        "coefficient_degrees": [F.degree(c), F.degree(d)],
        "time_limit": 60,
    }
    ok = ch1 == A1 and ch2 == A1 and b1.cycles() == "(465)" and b2.cycles() == "(36475)" and same_profile
    return CheckResult(4, "GL_9 Bruhat invariants (465) and (36475)", ok, detail)


SUPERBASIC_FRAMES = [(2, 1, 1), (3, 1, 1), (3, 2, 1), (2, 1, 2)]


@_timed
def check_superbasic(samples: int = 30, seed: int = 5) -> CheckResult:
    rng = random.Random(seed)
    detail = {}
    ok = True
    for h, m, d in SUPERBASIC_FRAMES:
        fr = make_frame({"kind": "superbasic-res", "m": m, "h": h, "d": d, "p": 2, "e": 2})
        bad = 0
        for _ in range(samples):
            mu = random_mu(rng, h * d)
            E = mu_lattice(fr, mu)
            M = iwahori_translate(rng, E, h, d)
            good = chart_of_lattice(fr, M) == mu_to_chart(mu, h, d)
            for l in range(1, h + 1):
                P = pi_power(fr, l)
                entry = fr.inv(P, M)
                good &= entry == fr.inv(P, E)
                later = fr.inv(pi_power(fr, l + h), M)
                good &= _shifted(entry, -1) == later
            bad += not good
        detail[f"h={h},m={m},d={d}"] = {"samples": samples, "failures": bad}
        ok &= bad == 0
    return CheckResult(5, "superbasic profile equals inv(pi^l, eps^mu)", ok, detail)


def _shifted(entry, k):
    if isinstance(entry, Cochar):
        return Cochar(tuple(x + k for x in entry.entries))
    return tuple(_shifted(e, k) for e in entry)


AGEN_CASES = [(1, 1, 2), (1, 2, 2), (2, 1, 3), (2, 3, 2)]


@_timed
def check_agen() -> CheckResult:
    detail = {}
    ok = True
    for m, n, l in AGEN_CASES:
        a, b = agen_box(m, n, l), agen_char_box(m, n, l)
        same = a == b
        detail[f"{m},{n},{l}"] = {"B": a.B, "members": int(a.table.sum()), "equal": same}
        ok &= same
    detail["time_limit"] = 30
    return CheckResult(6, "A_gen closure equals its characterization", ok, detail)


A1_FRAMES = [((1, 2, 2), 4), ((1, 3, 2), 6)]


def random_generator(rng, fr):
    """A vector with random coefficients on every basis vector e_{1,i,j}, 0 <= j < h."""
    F = fr.ctx
    terms = []
    for ch in fr.chains:
        for j in range(ch.length):
            if rng.random() < 0.75 or j == 0:
                terms.append((ch.name, j, rng.randrange(1, F.order)))
    return fr.vec(terms)


def nongeneric_lattices(fr, count: int = 5):
    """Direct sums pi^{k_1}Λ_{0,1} ⊕ pi^{k_2}Λ_{0,2}: a-number 2."""
    out = []
    m, h, l = fr.slopes[0]
    for k1, k2 in [(0, 0), (0, 1), (1, 0), (0, 2), (2, 5)][:count]:
        cols = []
        for c, k in zip(fr.chains, (k1, k2)):
            for j in range(h):
                cols.append(fr.e(c.name, j + k))
        out.append(Lattice.generated(cols))
    return out


@_timed
def check_generic_a1(samples: int = 20, seed: int = 7) -> CheckResult:
    rng = random.Random(seed)
    detail = {}
    ok = True
    for (m, h, l), e in A1_FRAMES:
        fr = make_frame({"kind": "isoclinic-gl", "slopes": [[m, h, l]], "p": 2, "e": e})
        n = h - m
        B = 3 * m * n * l
        G = agen_box(m, n, l, B)
        drawn = 0
        rows = []
        while len(rows) < samples:
            drawn += 1
            try:
                M = dieudonne_closure(fr, random_generator(rng, fr))
            except DepthExhausted:
                continue
            Mn, _ = normalize_in_orbit(fr, M)
            rows.append((a_number(fr, Mn), lattice_box(fr, Mn, B) == G))
        special = []
        for M in nongeneric_lattices(fr):
            Mn, _ = normalize_in_orbit(fr, M)
            special.append((a_number(fr, Mn), lattice_box(fr, Mn, B) == G))
        good = all(a == 1 and eq for a, eq in rows) and all(a >= 2 and not eq for a, eq in special)
        detail[f"{m},{h},{l}"] = {
            "generic": {"drawn": drawn, "a1": sum(a == 1 for a, _ in rows), "equal": sum(eq for _, eq in rows)},
            "nongeneric": [{"a": a, "equal_agen": eq} for a, eq in special],
            "box": B,
        }
        ok &= good
    return CheckResult(7, "a = 1 lattices have A(M) = A_gen", ok, detail)


@_timed
def check_gsp4(window: int = 1, survey_e: int = 2) -> CheckResult:
    # survey_e=4 also sees line members (about 3 minutes)
    rep = gsp4.gsp4_survey(2, survey_e, window)
    # line members need coefficients outside F_{p^2}; use the explicit family at e = 4
    fr = gsp4.gsp4_frame(2, 4)
    F = fr.ctx
    ps = probe_set(fr, window)
    anchor = gsp4.line_anchor(fr)
    points = [P for lab, P in ps if ps.flags[lab]["self_dual"] and contains(anchor, P) and P.volume() - anchor.volume() == 1]
    profiles = set()
    entries = set()
    kinds_ok = True
    for x in F.nonzero():
        M = gsp4.line_member(fr, x)
        d = gsp4.gsp4_classify(fr, M, ps)
        rational = F.frobenius(x, 2) == x
        kinds_ok &= d.kind == ("point" if rational else "line")
        if rational:
            continue
        kinds_ok &= d.anchor == ps.find(anchor)
        profiles.add(tuple(e.entries for _, e in f_profile(fr, M, ps).entries))
        for Q in points:
            entries.add(fr.inv(Q, M).entries)
    line = {
        "family_members": F.order - 1,
        "rational_points_on_anchor": len(points),
        "distinct_profiles": len(profiles),
        "entries_at_anchor_points": sorted(entries),
        "kinds_ok": kinds_ok,
    }
    ok = (
        rep["groupings_equal"]
        and rep["points_per_line"] == [5]
        and rep["lines_per_point"] == [3]
        and kinds_ok
        and len(profiles) == 1
        and sorted(entries) == [(1, 0, 0, -1)]
        and len(points) == 5
    )
    detail = {"survey": rep, "line_family": line, "time_limit": 300}
    return CheckResult(8, "GSp4 strata equal profile groups", ok, detail)


@_timed
def check_properties(seed: int = 9) -> CheckResult:
    rng = random.Random(seed)
    F = finite_field(3, 1, 2)
    detail = {}

    bad = 0
    for n in range(200):
        h = 2 if n % 2 else 3
        A = random_invertible(rng, F, h)
        bad += elementary_divisors(A) != elementary_divisors_oracle(A)
    detail["snf_oracle"] = {"cases": 200, "failures": bad}
    ok = bad == 0

    bad = 0
    for _ in range(100):
        h = rng.randint(1, 4)
        M1, M2 = Lattice(random_invertible(rng, F, h)), Lattice(random_invertible(rng, F, h))
        mu = relative_position(M1, M2)
        good = relative_position(M2, M1) == mu.dual()
        good &= intersect(M1, M2).volume() == sum(x for x in mu.entries if x > 0) + M1.volume()
        bad += not good
    detail["inv_duality_and_volume"] = {"cases": 100, "failures": bad}
    ok &= bad == 0

    bad = 0
    for _ in range(100):
        h = rng.randint(1, 4)
        M1, M2 = Lattice(random_invertible(rng, F, h)), Lattice(random_invertible(rng, F, h))
        herm = Form(identity(F, h), 1, "hermitian")
        good = dual_standard(dual_standard(M1)) == M1 and dual(dual(M1, herm), herm) == M1
        good &= intersect(M1, M2).volume() + lattice_sum(M1, M2).volume() == M1.volume() + M2.volume()
        bad += not good
    detail["dual_and_modularity"] = {"cases": 100, "failures": bad}
    ok &= bad == 0

    bad = 0
    for n in range(50):
        h, d = [(2, 1), (3, 1), (2, 2), (4, 1), (3, 2)][n % 5]
        fr = make_frame({"kind": "superbasic-res", "m": 1, "h": h, "d": d, "p": 2, "e": 2})
        mu = random_mu(rng, h * d, -2, 2)
        chart = chart_of_lattice(fr, mu_lattice(fr, mu))
        back = chart_to_mu(chart)
        flat = back if d == 1 else tuple(x for c in back for x in c)
        bad += flat != mu or chart != mu_to_chart(mu, h, d)
    detail["chart_mu_roundtrip"] = {"cases": 50, "failures": bad}
    ok &= bad == 0

    detail["consecutive_chart_uniqueness"] = _consecutive_chart_uniqueness()
    ok &= detail["consecutive_chart_uniqueness"]["failures"] == 0
    return CheckResult(9, "property suites", ok, detail)


def _consecutive_chart_uniqueness():
    """Every lattice in the window whose chart is {i >= l} is <e_i : i >= l> (over F_4)."""
    out = {"enumerated": 0, "consecutive": 0, "failures": 0}
    for h in (2, 3):
        fr = make_frame({"kind": "superbasic-res", "m": 1, "h": h, "p": 2, "e": 2})
        W = Window.standard(fr.ctx, h, -1, 1)
        for key in enumerate_submodules(W, []):
            M = W.lattice(key)
            out["enumerated"] += 1
            mins = chart_of_lattice(fr, M).minima[0]
            if list(mins) == list(range(mins[0], mins[0] + h)):
                out["consecutive"] += 1
                std = Lattice.generated([fr.e("e", i) for i in range(mins[0], mins[0] + h)])
                out["failures"] += M != std
    return out


NOT_DESK_VERIFIABLE = {
    "Zariski closures of strata": "covered by the minor-list and Cauchy-Binet certificates (checks 1, 2)",
    "finiteness of the invariant (profiles determined by finitely many probes)": "spot-checked via window-stable profiles (checks 4, 5, 8, 9)",
    "Coxeter-type conjecture beyond GSp4": "only the GSp4 case is verified (check 8)",
}


@_timed
def check_acknowledged() -> CheckResult:
    covered = all(v for v in NOT_DESK_VERIFIABLE.values())
    return CheckResult(10, "non-reproducible content acknowledged", covered, {"items": NOT_DESK_VERIFIABLE})


CHECKS = [
    check_minor_lists,
    check_cauchy_binet,
    check_hermitian,
    check_gl9,
    check_superbasic,
    check_agen,
    check_generic_a1,
    check_gsp4,
    check_properties,
    check_acknowledged,
]


def run_all(only=None, echo=None) -> list:
    results = []
    for n, fn in enumerate(CHECKS, 1):
        if only and n not in only:
            continue
        try:
            res = fn()
        except Exception as exc:  # a crash is a failure of that criterion, not of the runner
            res = CheckResult(n, fn.__name__, False, {"error": f"{type(exc).__name__}: {exc}"})
        results.append(res)
        if echo:
            echo(res.line())
    return results
