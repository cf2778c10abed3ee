"""Exact computations on Tesler polytopes, their deformation cone, and
flow polytopes on the complete acyclic digraph."""

from .core import (
    TildeUpperTri,
    UpperTri,
    flow_hrep,
    hook_sum,
    hook_sum_tilde,
    hook_vector,
    rat,
    support,
    tesler_hrep,
)
from .defcone import (
    DeformingVector,
    FaceIndex,
    cone_contains,
    cone_face_membership,
    deform_vertex,
    face_index,
    q_polytope,
    tesler_deforms,
    tesler_translate,
)
from .errors import TeslerError
from .flow import (
    critical_position,
    forced_entries,
    is_deformation_of_tesler,
    is_feasible,
    tight_description,
    translate_reduce,
    witness_flow,
)
from .polyhedra import HRep, VRep, enumerate_vertices, is_deformation, minimize
from .tesler import (
    are_adjacent,
    dep_chain,
    edge_vector,
    support_map_vertex,
    tesler_edges,
    tesler_vertices,
    tightness_witnesses,
)

__all__ = [
    "DeformingVector", "FaceIndex", "HRep", "TeslerError", "TildeUpperTri", "UpperTri", "VRep",
    "are_adjacent", "cone_contains", "cone_face_membership", "critical_position", "deform_vertex",
    "dep_chain", "edge_vector", "enumerate_vertices", "face_index", "flow_hrep", "forced_entries",
    "hook_sum", "hook_sum_tilde", "hook_vector", "is_deformation", "is_deformation_of_tesler",
    "is_feasible", "minimize", "q_polytope", "rat", "support", "support_map_vertex",
    "tesler_deforms", "tesler_edges", "tesler_hrep", "tesler_translate", "tesler_vertices",
    "tight_description", "tightness_witnesses", "translate_reduce", "witness_flow",
]
