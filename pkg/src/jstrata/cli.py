"""Command-line front end: JSON frames and lattices in, canonical JSON reports out.

Exit codes: 0 success, 1 input or computation error, 2 failed acceptance check in ``repro-all``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .errors import StrataError
from .isocrystal import a_number, dieudonne_closure, make_frame
from .lattice import relative_position

DEFAULT_WINDOW = 1
DEFAULT_PREC = 64


class InputError(Exception):
    pass


def _load(arg: str):
    """A JSON file path, or an inline JSON document starting with '{' or '['."""
    text = arg.strip()
    if text[:1] in "{[":
        return json.loads(text)
    return serialize.load_json(arg)


def _frame(args):
    if not args.frame:
        raise InputError("--frame is required")
    return make_frame(_load(args.frame))


def _lattice(args, attr="lattice", fr=None):
    src = getattr(args, attr)
    if not src:
        raise InputError(f"--{attr} is required")
    d = _load(src)
    if "closure_of" in d:
        # Dieudonne closure of a single generator [[chain, j, x?], ...]
        if fr is None:
            raise InputError("closure_of needs --frame")
        v = fr.vec([tuple(t) for t in d["closure_of"]])
        return dieudonne_closure(fr, v, depth=args.depth)
    return serialize.lattice_from_json(d, fr)


def _mu(text: str):
    if text is None:
        raise InputError("--mu is required")
    text = text.strip()
    if text.startswith("["):
        return tuple(json.loads(text))
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def _gamma(items):
    out = []
    for x in items:
        out.append(float("inf") if x in ("inf", "oo") else int(x))
    return tuple(out)


# subcommands ---------------------------------------------------------------


def cmd_inv(args):
    fr = make_frame(_load(args.frame)) if args.frame else None
    M1, M2 = _lattice(args, "lattice", fr), _lattice(args, "lattice2", fr)
    mu = relative_position(M1, M2)
    return {"inv": mu, "vol1": M1.volume(), "vol2": M2.volume()}


def cmd_vol(args):
    fr = make_frame(_load(args.frame)) if args.frame else None
    return {"vol": _lattice(args, fr=fr).volume()}


def cmd_anum(args):
    fr = _frame(args)
    return {"a_number": a_number(fr, _lattice(args, fr=fr))}


def cmd_chart(args):
    from .semimodule import chart_of_lattice

    fr = _frame(args)
    ch = chart_of_lattice(fr, _lattice(args, fr=fr))
    return {"h": ch.h, "minima": [list(m) for m in ch.minima]}


def cmd_profile(args):
    from .jprobe import f_profile, probe_set

    fr = _frame(args)
    M = _lattice(args, fr=fr)
    ps = probe_set(fr, args.window)
    return {"window": args.window, "probes": len(ps), "profile": f_profile(fr, M, ps)}


def cmd_eo(args):
    from .eolevel1 import bruhat_invariant, trunc_level1

    fr = _frame(args)
    M = _lattice(args, fr=fr)
    mu = _mu(args.mu)
    w = trunc_level1(fr, M, mu)
    return {"w": w.cycles(), "bruhat": bruhat_invariant(w, mu).cycles(), "length": w.length}


def cmd_agen_check(args):
    from .semimodule import agen_box, agen_char_box

    m, n, l = args.agen_m, args.agen_n, args.agen_l
    if min(m, n, l) < 1:
        raise InputError("m, n, l must be positive")
    a = agen_box(m, n, l, args.box)
    b = agen_char_box(m, n, l, args.box)
    return {"m": m, "n": n, "l": l, "box": a.B, "members": int(a.table.sum()), "equal": a == b}


def cmd_gamma_member(args):
    from .semimodule import gamma_member

    fr = _frame(args)
    M = _lattice(args, fr=fr)
    gamma = _gamma(args.gamma)
    return {"gamma": gamma, "member": gamma_member(fr, M, gamma)}


def cmd_case(args):
    if args.case == "gelfand-serganova":
        from .casestudies.gelfand_serganova import gs_minor_lists

        rep = gs_minor_lists(args.p if args.p is not None else 3)
        keep = ("p", "L_A1", "L_A0", "L_B", "lists_equal", "ranks", "collinear_triples", "vanishing_A1")
        return {k: rep[k] for k in keep}
    if args.case == "hermitian":
        from .casestudies.hermitian import theta_psi

        p, m = args.p or 2, args.m or 2
        brute, closed, ps = theta_psi(p, m)
        return {"p": p, "m": m, "brute": brute, "closed": closed, "psi": ps}
    if args.case == "vw":
        from .casestudies.hermitian import vw_report

        return vw_report(n=args.n or 3, p=args.p or 2, e=args.e or 6)
    if args.case == "gsp4":
        from .casestudies.gsp4 import gsp4_survey

        rep = gsp4_survey(args.p or 2, args.e or 2, args.window)
        rep.pop("seconds")  # keep output byte-identical across runs
        return rep
    raise InputError(f"unknown case {args.case!r}")


def cmd_repro_all(args):
    from .repro import run_all

    only = set(args.only) if args.only else None
    results = run_all(only=only, echo=lambda s: print(s, file=sys.stderr))
    report = {"results": [r.as_dict() for r in results], "passed": all(r.passed for r in results)}
    return report


COMMANDS = {
    "inv": cmd_inv,
    "vol": cmd_vol,
    "anum": cmd_anum,
    "chart": cmd_chart,
    "profile": cmd_profile,
    "eo": cmd_eo,
    "agen-check": cmd_agen_check,
    "gamma-member": cmd_gamma_member,
    "case": cmd_case,
    "repro-all": cmd_repro_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--frame", help="frame JSON file or inline JSON, e.g. '{\"kind\": \"gsp4\", \"p\": 2, \"e\": 2}'")
    common.add_argument("--lattice", help="lattice JSON: {basis}, {generators} or {closure_of}")
    common.add_argument("--lattice2", help="second lattice (inv)")
    common.add_argument("--mu", help="cocharacter, comma separated or a JSON list")
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="probe window (default %(default)s)")
    common.add_argument("--box", type=int, default=None, help="box bound B (default 3mnl)")
    common.add_argument("--prec", type=int, default=DEFAULT_PREC, help="t-adic precision (default %(default)s)")
    common.add_argument("--p", type=int, default=None, help="characteristic")
    common.add_argument("--m", type=int, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--e", type=int, default=None, help="degree of the coefficient field over F_p")
    common.add_argument("--depth", type=int, default=None, help="Dieudonne closure depth (default 2*h*max chain length)")
    common.add_argument("--out", help="write JSON here instead of stdout")

    ap = argparse.ArgumentParser(prog="jstrata", description="Lattice strata invariants over F_q((t)).")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("inv", "vol", "anum", "chart", "profile", "eo"):
        sub.add_parser(name, parents=[common])
    sp = sub.add_parser("agen-check", parents=[common])
    for dest in ("M", "N", "L"):
        sp.add_argument(f"agen_{dest.lower()}", type=int, metavar=dest)
    sp = sub.add_parser("gamma-member", parents=[common])
    sp.add_argument("gamma", nargs="+", help="entries of gamma; 'inf' allowed")
    sp = sub.add_parser("case", parents=[common])
    sp.add_argument("case", choices=["gelfand-serganova", "hermitian", "vw", "gsp4"])
    sp = sub.add_parser("repro-all", parents=[common])
    sp.add_argument("--only", type=int, nargs="*", help="run only these check numbers")
    return ap


def _validate(args):
    if args.prec <= 0:
        raise InputError("--prec must be positive")
    if args.window < 0:
        raise InputError("--window must be non-negative")
    for k in ("box", "p", "m", "n", "e", "depth"):
        v = getattr(args, k)
        if v is not None and v <= 0:
            raise InputError(f"--{k} must be positive")


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        _validate(args)
        report = COMMANDS[args.command](args)
    except (InputError, StrataError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"jstrata {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if isinstance(report, dict) and args.command != "repro-all":
        report["precision"] = args.prec
    text = serialize.dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "repro-all" and not report["passed"]:
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
