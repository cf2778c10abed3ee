"""The deformation cone of a Tesler polytope with positive hook sums.

A deforming vector is a pair ``(a, btilde)``: ``a`` replaces the hook-sum
right-hand side and ``btilde`` the right-hand side of ``-m_ij <= 0`` for
every coordinate except ``(n, n)``.  The cone is cut out by
``eta_i(btilde) >= -a_i`` for ``i < n``, and every polytope in it is a
translated Tesler polytope.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Optional, Sequence, Tuple

from .core import (
    TildeUpperTri,
    UpperTri,
    hook_vector,
    hook_vector_tilde,
    hrep_from_rhs,
    rat_vector,
)
from .errors import NegativeInput, NotAVertex, NotInCone, ShapeMismatch
from .polyhedra import HRep


@dataclass(frozen=True)
class DeformingVector:
    a: Tuple[Fraction, ...]
    btilde: TildeUpperTri

    def __post_init__(self):
        object.__setattr__(self, "a", rat_vector(self.a))
        if not isinstance(self.btilde, TildeUpperTri):
            raise ShapeMismatch("btilde must be a TildeUpperTri")
        if len(self.a) != self.btilde.n:
            raise ShapeMismatch(
                f"hook vector has length {len(self.a)} but btilde has size {self.btilde.n}"
            )

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def zero_offset(cls, a: Sequence) -> "DeformingVector":
        a = rat_vector(a)
        return cls(a, TildeUpperTri.zeros(len(a)))


@dataclass(frozen=True)
class FaceIndex:
    n: int
    members: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        members = frozenset(self.members)
        if any(not 1 <= i <= self.n - 1 for i in members):
            raise ShapeMismatch(f"face labels must lie in 1..{self.n - 1}")
        object.__setattr__(self, "members", members)

    def __le__(self, other: "FaceIndex") -> bool:
        return self.members <= other.members

    def sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))


def cone_slack(dv: DeformingVector) -> Tuple[Fraction, ...]:
    """``eta_i(btilde) + a_i`` for ``i = 1..n-1``; the cone is where all are >= 0."""
    return tuple(e + a for e, a in zip(hook_vector_tilde(dv.btilde), dv.a))


def cone_violations(dv: DeformingVector) -> Tuple[int, ...]:
    return tuple(i for i, s in enumerate(cone_slack(dv), start=1) if s < 0)


def cone_contains(dv: DeformingVector) -> bool:
    return not cone_violations(dv)


def _require_cone(dv: DeformingVector):
    bad = cone_violations(dv)
    if bad:
        raise NotInCone(f"hook-sum inequality fails at rows {list(bad)}", rows=list(bad))


def q_polytope(dv: DeformingVector) -> HRep:
    return hrep_from_rhs(dv.a, dv.btilde.entries)


def tesler_translate(dv: DeformingVector) -> Tuple[UpperTri, Tuple[Fraction, ...]]:
    """``(t, a_T)`` with ``Q(a, btilde) = Tes_n(a_T) + t``."""
    _require_cone(dv)
    n = dv.n
    a_t = cone_slack(dv) + (Fraction(0),)
    corner = sum((dv.btilde[i, n] for i in range(1, n)), Fraction(0)) - dv.a[-1]
    t = -dv.btilde.extend(corner)
    return t, a_t


def _positive_vertex_columns(v: UpperTri):
    cols = []
    for i in range(1, v.n + 1):
        nz = v.row_nonzeros(i)
        if len(nz) != 1 or v[i, nz[0]] < 0:
            raise NotAVertex(f"row {i} must hold exactly one positive entry", row=i)
        cols.append(nz[0])
    return cols


def deform_vertex(v: UpperTri, dv: DeformingVector, a0: Optional[Sequence] = None) -> UpperTri:
    """Image of the vertex ``v`` of ``Tes_n(a0)`` in ``Q(a, btilde)``.

    Off the support of ``v`` the entries are pinned at ``-btilde_ij``; the
    single supported entry of each row is then solved from the hook sums,
    top row first.
    """
    _require_cone(dv)
    n = dv.n
    if v.n != n:
        raise ShapeMismatch("vertex and deforming vector sizes differ")
    cols = _positive_vertex_columns(v)
    eta = hook_vector(v)
    if a0 is not None and rat_vector(a0) != eta:
        raise NotAVertex("vertex does not lie in Tes_n(a0)")
    if any(x <= 0 for x in eta):
        raise NotAVertex("base hook vector must be strictly positive")

    values = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if j != cols[i - 1]:
                values[(i, j)] = -dv.btilde[i, j]
    for i in range(1, n + 1):
        j = cols[i - 1]
        out = sum((values[(i, c)] for c in range(i, n + 1) if c != j), Fraction(0))
        inflow = sum((values[(p, i)] for p in range(1, i)), Fraction(0))
        values[(i, j)] = dv.a[i - 1] - out + inflow
    return UpperTri.from_map(n, values)


def face_index(a: Sequence) -> FaceIndex:
    a = rat_vector(a)
    if any(x < 0 for x in a):
        raise NegativeInput("face index needs a nonnegative hook vector")
    return FaceIndex(len(a), frozenset(i for i in range(1, len(a)) if a[i - 1] > 0))


def cone_face_membership(dv: DeformingVector) -> FaceIndex:
    """Label of the face whose relative interior contains ``dv``."""
    _require_cone(dv)
    return FaceIndex(dv.n, frozenset(i for i, s in enumerate(cone_slack(dv), start=1) if s > 0))


@dataclass(frozen=True)
class TeslerComparison:
    """Whether ``Tes_n(a)`` is a deformation of ``Tes_n(b)``.

    ``by_converse`` is set when the answer ``"neither"`` rests on the
    converse direction (face inclusion is also necessary), which is derived
    rather than a direct statement and is checked against the oracle in the
    test suite.
    """

    verdict: str
    face_a: FaceIndex
    face_b: FaceIndex
    by_converse: bool


def tesler_deforms(a: Sequence, b: Sequence) -> TeslerComparison:
    fa, fb = face_index(a), face_index(b)
    if fa.n != fb.n:
        raise ShapeMismatch("hook vectors have different lengths")
    if fa.members == fb.members:
        verdict = "normally_equivalent"
    elif fa.members <= fb.members:
        verdict = "deformation"
    else:
        verdict = "neither"
    return TeslerComparison(verdict, fa, fb, verdict == "neither")
