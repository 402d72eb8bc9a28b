"""JSON encodings of series, lattices, frames and reports (canonical key order)."""

from __future__ import annotations

import json
import math

from .errors import BadSpec
from .ffield import FieldCtx, field
from .isocrystal import Frame, make_frame
from .lattice import Cochar, Lattice
from .series import Series


def series_to_json(s: Series) -> dict:
    return {"v_min": s.v_min, "prec": s.prec, "coeffs": list(s.coeffs)}


def series_from_json(F: FieldCtx, d) -> Series:
    if isinstance(d, int):
        return Series.monomial(F, d, 0) if d else Series.zero(F)
    return Series(F, d.get("v_min", 0), tuple(d.get("coeffs", ())), d.get("prec"))


def lattice_to_json(M: Lattice) -> dict:
    F = M.ctx
    return {
        "convention": "columns-span",
        "field": {"p": F.p, "r": F.r, "e": F.e},
        "h": M.h,
        "basis": [[series_to_json(s) for s in col] for col in M.columns()],
    }


def lattice_from_json(d: dict, fr: Frame | None = None) -> Lattice:
    """Either {basis: columns of series} or {generators: [[[chain, j, x?], ...], ...]} (needs a frame)."""
    if "generators" in d:
        if fr is None:
            raise BadSpec("generator lists need a frame")
        cols = [fr.vec([tuple(t) for t in g]) for g in d["generators"]]
        return Lattice.generated(cols)
    if "basis" not in d:
        raise BadSpec("lattice JSON needs 'basis' or 'generators'")
    if "field" in d:
        f = d["field"]
        F = field(f["p"], f.get("r", 1), f.get("e", 1))
    elif fr is not None:
        F = fr.ctx
    else:
        raise BadSpec("lattice JSON has no field and no frame was given")
    if d.get("convention", "columns-span") != "columns-span":
        raise BadSpec(f"unknown convention {d['convention']!r}")
    cols = [[series_from_json(F, s) for s in col] for col in d["basis"]]
    if "h" in d and any(len(c) != d["h"] for c in cols):
        raise BadSpec("column length differs from h")
    if len(cols) == len(cols[0]):
        return Lattice.from_columns(cols)
    return Lattice.generated(cols)


def frame_to_json(fr: Frame) -> dict:
    F = fr.ctx
    out = {"kind": fr.kind, "p": F.p, "r": F.r, "e": F.e}
    if fr.kind == "superbasic-res":
        m, h, _ = fr.slopes[0]
        out.update({"m": m, "h": h, "d": fr.d, "m_tau": list(fr.m_tau)})
    elif fr.kind == "isoclinic-gl":
        out["slopes"] = [list(s) for s in fr.slopes]
    elif fr.kind == "unitary-n0":
        out["n"] = fr.h_total
    return out


def frame_from_json(d: dict) -> Frame:
    return make_frame(d)


def to_jsonable(x):
    """Recursively convert reports (dataclasses, tuples, Cochars, inf) to plain JSON values."""
    if isinstance(x, Cochar):
        return list(x.entries)
    if isinstance(x, Lattice):
        return lattice_to_json(x)
    if isinstance(x, Series):
        return series_to_json(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "as_dict"):
        return to_jsonable(x.as_dict())
    return x


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
