"""Command line interface: ``teslerforge <group> <command> [flags]``.

Every command prints one JSON document.  Exit status is 0 on success, 2 on
a domain error (the document is then ``{"error": {"code", "message"}}``)
and 1 on a usage error.  Flag values are inline JSON or ``@path``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional

from . import defcone, flow, polyhedra, tesler
from .core import hook_vector
from .errors import InvalidInput, TeslerError
from .jsonio import (
    dumps,
    loads,
    rat_str,
    read_deforming,
    read_hrep,
    read_netflow,
    read_tilde,
    read_upper,
    read_vector,
    write_comparison,
    write_deform_check,
    write_face,
    write_tight,
    write_upper,
    write_vector,
    write_verdict,
    write_vrep,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(value: str, flag: str):
    if value.startswith("@"):
        try:
            with open(value[1:], encoding="utf-8") as fh:
                value = fh.read()
        except OSError as exc:
            raise InvalidInput(f"cannot read {flag} file: {exc.strerror}")
    return loads(value)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return _load(value, name)


def _dv(args) -> defcone.DeformingVector:
    """A deforming vector from ``--a`` and ``--btilde``; ``--a`` may also
    carry the whole ``{"a", "btilde"}`` object."""
    data = _need(args, "a")
    if isinstance(data, dict) and "btilde" in data:
        return read_deforming(data)
    return defcone.DeformingVector(read_netflow(data), read_tilde(_need(args, "btilde")))


# -- tes ------------------------------------------------------------------


def tes_vertices(args):
    verts = tesler.tesler_vertices(read_netflow(_need(args, "a")), max_n=args.max_n)
    return {"count": len(verts), "vertices": [write_upper(v) for v in verts]}


def tes_edges(args):
    verts, edges = tesler.tesler_edges(read_netflow(_need(args, "a")), max_n=args.max_n)
    return {"vertices": [write_upper(v) for v in verts], "edges": [list(e) for e in edges]}


def tes_hooksum(args):
    return {"eta": write_vector(hook_vector(read_upper(_need(args, "matrix"))))}


def tes_deform_map(args):
    pairs = tesler.deformation_map(
        read_netflow(_need(args, "a0")), read_netflow(_need(args, "a")), max_n=args.max_n
    )
    return {"map": [{"vertex": write_upper(v), "image": write_upper(w)} for v, w in pairs]}


# -- defcone --------------------------------------------------------------


def defcone_check(args):
    dv = _dv(args)
    return {
        "contains": defcone.cone_contains(dv),
        "slack": write_vector(defcone.cone_slack(dv)),
        "violations": list(defcone.cone_violations(dv)),
    }


def defcone_face(args):
    data = _need(args, "a")
    if args.btilde is None and not (isinstance(data, dict) and "btilde" in data):
        return {"face": write_face(defcone.face_index(read_netflow(data)))}
    return {"face": write_face(defcone.cone_face_membership(_dv(args)))}


def defcone_translate(args):
    t, a_t = defcone.tesler_translate(_dv(args))
    return {"t": write_upper(t), "a_T": write_vector(a_t)}


def defcone_deform_vertex(args):
    v = read_upper(_need(args, "vertex"))
    a0 = read_netflow(_load(args.a0, "a0")) if args.a0 is not None else None
    return {"image": write_upper(defcone.deform_vertex(v, _dv(args), a0=a0))}


def defcone_compare(args):
    return write_comparison(
        defcone.tesler_deforms(read_netflow(_need(args, "a")), read_netflow(_need(args, "b")))
    )


# -- flow -----------------------------------------------------------------


def flow_feasible(args):
    a = read_netflow(_need(args, "a"))
    return {"feasible": flow.is_feasible(a), "prefix_sums": write_vector(flow.prefix_sums(a))}


def flow_critical(args):
    a = read_netflow(_need(args, "a"))
    l, voided = flow.critical_position(a)
    forced = [
        {"i": i, "j": j, "value": rat_str(x)} for (i, j), x in sorted(flow.forced_entries(a).items())
    ]
    return {"l": l, "voided": list(voided), "forced": forced}


def flow_reduce(args):
    a_hat, t = flow.translate_reduce(read_netflow(_need(args, "a")))
    return {"a_hat": write_vector(a_hat), "t": write_upper(t)}


def flow_witness(args):
    return {"witness": write_upper(flow.witness_flow(read_netflow(_need(args, "a"))))}


def flow_tight(args):
    return write_tight(flow.tight_description(read_netflow(_need(args, "a"))))


def flow_verdict(args):
    return write_verdict(flow.is_deformation_of_tesler(read_netflow(_need(args, "a"))))


# -- oracle ---------------------------------------------------------------


def oracle_vertices(args):
    return write_vrep(polyhedra.enumerate_vertices(read_hrep(_need(args, "hrep"))))


def oracle_minimize(args):
    value, arg = polyhedra.minimize(
        read_hrep(_need(args, "hrep")), read_vector(_need(args, "objective"))
    )
    return {"value": rat_str(value), "argmin": write_vector(arg)}


def oracle_is_deformation(args):
    p0 = read_hrep(_need(args, "hrep"))
    rhs = (read_vector(_need(args, "a")), read_vector(_need(args, "b")))
    return write_deform_check(polyhedra.is_deformation(p0, rhs))


COMMANDS: Dict[str, Dict[str, Callable]] = {
    "tes": {
        "vertices": tes_vertices,
        "edges": tes_edges,
        "hooksum": tes_hooksum,
        "deform-map": tes_deform_map,
    },
    "defcone": {
        "check": defcone_check,
        "face": defcone_face,
        "translate": defcone_translate,
        "deform-vertex": defcone_deform_vertex,
        "compare": defcone_compare,
    },
    "flow": {
        "feasible": flow_feasible,
        "critical": flow_critical,
        "reduce": flow_reduce,
        "witness": flow_witness,
        "tight": flow_tight,
        "verdict": flow_verdict,
    },
    "oracle": {
        "vertices": oracle_vertices,
        "minimize": oracle_minimize,
        "is-deformation": oracle_is_deformation,
    },
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    for flag in ("a", "b", "a0", "btilde", "matrix", "vertex", "hrep", "objective"):
        common.add_argument(f"--{flag}", metavar="JSON")
    common.add_argument("--out", metavar="FILE", help="write the result to FILE")
    common.add_argument("--pretty", action="store_true", help="human-readable layout")
    common.add_argument("--max-n", type=int, default=tesler.DEFAULT_MAX_N, dest="max_n")

    parser = _Parser(prog="teslerforge", description="Tesler and flow polytope toolkit")
    groups = parser.add_subparsers(dest="group", metavar="GROUP", parser_class=_Parser)
    groups.required = True
    for group, commands in COMMANDS.items():
        sub = groups.add_parser(group).add_subparsers(
            dest="command", metavar="COMMAND", parser_class=_Parser
        )
        sub.required = True
        for name, fn in commands.items():
            sub.add_parser(name, parents=[common]).set_defaults(handler=fn)
    return parser


def _is_matrix(x) -> bool:
    return isinstance(x, dict) and set(x) == {"n", "rows"}


def _bracket(m) -> List[str]:
    cells = [c for r in m["rows"] for c in r]
    width = max((len(c) for c in cells), default=1)
    return [
        " " * ((width + 1) * i) + "[" + " ".join(c.rjust(width) for c in r) + "]"
        for i, r in enumerate(m["rows"])
    ]


def render_pretty(obj) -> str:
    """Indented JSON with every matrix drawn as staggered bracket rows."""

    def swap(x):
        if _is_matrix(x):
            return _bracket(x)
        if isinstance(x, dict):
            return {k: swap(v) for k, v in x.items()}
        if isinstance(x, list):
            return [swap(v) for v in x]
        return x

    return json.dumps(swap(obj), sort_keys=True, indent=2) + "\n"


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.handler(args)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 1
    except TeslerError as exc:
        stdout.write(dumps({"error": {"code": exc.code, "message": str(exc)}}))
        return 2
    text = render_pretty(result) if args.pretty else dumps(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
