"""JSON encoders and decoders.

Rationals travel as strings (``"3/4"``, ``"-2"``); readers also take
integers but reject floats.  Matrices are ``{"n": n, "rows": [...]}`` with
row ``i`` holding entries ``(i, i) .. (i, n)``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import TildeUpperTri, UpperTri, rat
from .defcone import DeformingVector, FaceIndex, TeslerComparison
from .errors import InvalidInput, ShapeMismatch
from .flow import (
    AllNonnegTail,
    FlowVerdict,
    NegativeTail,
    NonRedundantDiagonal,
    PointPolytope,
    Representable,
)
from .polyhedra import DeformCheck, HRep, VRep


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def read_rat(x: Any) -> Fraction:
    if isinstance(x, (bool, float)) or not isinstance(x, (int, str)):
        raise InvalidInput(f"{x!r} is not a rational literal (use an integer or a \"p/q\" string)")
    return rat(x.strip() if isinstance(x, str) else x)


def write_vector(v):
    return [rat_str(x) for x in v]


def read_vector(data) -> tuple:
    if not isinstance(data, list):
        raise InvalidInput("expected a JSON array of rationals")
    return tuple(read_rat(x) for x in data)


def _write_tri(m):
    return {"n": m.n, "rows": [write_vector(r) for r in m.rows()]}


def _read_tri(cls, data):
    if isinstance(data, list):
        rows = data
        declared = None
    elif isinstance(data, dict) and "rows" in data:
        rows = data["rows"]
        declared = data.get("n")
    else:
        raise InvalidInput("expected {\"n\": n, \"rows\": [...]}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidInput("rows must be a list of lists")
    m = cls.from_rows([[read_rat(x) for x in r] for r in rows])
    if declared is not None and declared != m.n:
        raise ShapeMismatch(f"declared n={declared} but rows describe n={m.n}")
    return m


def write_upper(m: UpperTri):
    return _write_tri(m)


def read_upper(data) -> UpperTri:
    return _read_tri(UpperTri, data)


def write_tilde(b: TildeUpperTri):
    return _write_tri(b)


def read_tilde(data) -> TildeUpperTri:
    return _read_tri(TildeUpperTri, data)


def write_netflow(a):
    return {"n": len(a), "a": write_vector(a)}


def read_netflow(data) -> tuple:
    """Accepts ``{"n", "a"}`` or a bare array."""
    if isinstance(data, dict):
        a = read_vector(data.get("a"))
        if "n" in data and data["n"] != len(a):
            raise ShapeMismatch(f"declared n={data['n']} but got {len(a)} entries")
        return a
    return read_vector(data)


def write_deforming(dv: DeformingVector):
    return {"a": write_vector(dv.a), "btilde": write_tilde(dv.btilde)}


def read_deforming(data) -> DeformingVector:
    if not isinstance(data, dict) or "a" not in data or "btilde" not in data:
        raise InvalidInput("expected {\"a\": [...], \"btilde\": {...}}")
    return DeformingVector(read_netflow(data["a"]), read_tilde(data["btilde"]))


def _write_rows(rows):
    return [{"coeffs": write_vector(c), "rhs": rat_str(r)} for c, r in rows]


def _read_rows(rows):
    if not isinstance(rows, list):
        raise InvalidInput("constraint rows must be a list")
    out = []
    for row in rows:
        if not isinstance(row, dict) or "coeffs" not in row or "rhs" not in row:
            raise InvalidInput("each constraint needs \"coeffs\" and \"rhs\"")
        out.append((read_vector(row["coeffs"]), read_rat(row["rhs"])))
    return tuple(out)


def write_hrep(h: HRep):
    return {"dim": h.dim, "eq": _write_rows(h.eq), "ineq": _write_rows(h.ineq)}


def read_hrep(data) -> HRep:
    if not isinstance(data, dict) or not isinstance(data.get("dim"), int):
        raise InvalidInput("expected {\"dim\": d, \"eq\": [...], \"ineq\": [...]}")
    return HRep(data["dim"], _read_rows(data.get("eq", [])), _read_rows(data.get("ineq", [])))


def write_vrep(v: VRep):
    return {
        "vertices": [write_vector(p) for p in v.vertices],
        "adjacency": [list(e) for e in sorted(v.adjacency)],
        "active_sets": [sorted(s) for s in v.active_sets],
    }


def write_face(f: FaceIndex):
    return {"n": f.n, "I": list(f.sorted())}


def write_comparison(c: TeslerComparison):
    return {
        "verdict": c.verdict,
        "face_a": write_face(c.face_a),
        "face_b": write_face(c.face_b),
        "by_converse": c.by_converse,
    }


def write_deform_check(d: DeformCheck):
    out = {"verdict": d.verdict, "certificate": {}}
    if d.reason is not None:
        out["certificate"]["reason"] = d.reason
    if d.row is not None:
        out["certificate"]["row"] = d.row
    if d.vertex is not None:
        out["certificate"]["vertex"] = d.vertex
    if d.vertex_map is not None:
        out["vertex_map"] = list(d.vertex_map)
    if d.q is not None:
        out["q_vertices"] = [write_vector(p) for p in d.q.vertices]
    return out


def write_tight(t):
    if isinstance(t, Representable):
        return {"kind": t.kind, "btilde": write_tilde(t.btilde)}
    return {"kind": t.kind, "g": write_upper(t.g)}


def write_certificate(c):
    if isinstance(c, PointPolytope):
        return {"kind": c.kind, "point": write_upper(c.point)}
    if isinstance(c, AllNonnegTail):
        return {"kind": c.kind}
    if isinstance(c, NegativeTail):
        return {
            "kind": c.kind,
            "m": c.m,
            "eta_m": rat_str(c.eta_m),
            "neg_a_m": rat_str(c.neg_a_m),
            "btilde": write_tilde(c.btilde),
            "witness": write_upper(c.witness),
        }
    if isinstance(c, NonRedundantDiagonal):
        return {"kind": c.kind, "g": write_upper(c.g)}
    raise TypeError(f"unknown certificate {c!r}")


def write_verdict(v: FlowVerdict):
    return {
        "is_deformation": v.is_deformation,
        "l": v.l,
        "voided": list(v.voided),
        "certificate": write_certificate(v.certificate),
        "a": write_vector(v.a),
        "a_hat": write_vector(v.a_hat),
        "t": write_upper(v.t),
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    """Parse JSON, refusing floating-point literals outright."""

    def no_float(s):
        raise InvalidInput(f"floating-point literal {s} is not allowed; use a \"p/q\" string")

    try:
        return json.loads(text, parse_float=no_float)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc.msg}")
