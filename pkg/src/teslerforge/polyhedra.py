"""Brute-force exact polyhedral computations.

This module is the ground truth the Tesler-specific code is checked
against, so it deliberately knows nothing about hook sums, supports or
flows.  Everything works on plain coordinate tuples of ``Fraction``.

A polytope is given by an :class:`HRep`::

    E x = alpha,   G x <= beta

Vertices are found by exhaustive basis enumeration: the equalities are
eliminated first, then every choice of ``d`` inequality rows whose
restriction is nonsingular is solved exactly and kept if feasible.  The
subset walk eliminates incrementally and prunes as soon as a chosen row
is dependent on the previous ones.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import (
    DimensionTooLarge,
    EmptyPolytope,
    InvalidInput,
    ShapeMismatch,
    UnboundedOrRankDeficient,
)

Point = Tuple[Fraction, ...]
Row = Tuple[Point, Fraction]

DEFAULT_MAX_DIM = 15
MAX_DIM_ENV = "TESLERFORGE_MAX_DIM"


def _rat(x) -> Fraction:
    if isinstance(x, float):
        raise InvalidInput(f"floating-point value {x!r} rejected; use a rational")
    return Fraction(x)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def max_dim() -> int:
    value = os.environ.get(MAX_DIM_ENV)
    if value is None:
        return DEFAULT_MAX_DIM
    try:
        return int(value)
    except ValueError:
        raise InvalidInput(f"{MAX_DIM_ENV} must be an integer, got {value!r}")


@dataclass(frozen=True)
class HRep:
    """``eq`` rows mean ``<c, x> = rhs``; ``ineq`` rows mean ``<g, x> <= rhs``."""

    dim: int
    eq: Tuple[Row, ...] = ()
    ineq: Tuple[Row, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeMismatch("dim must be positive")
        for name in ("eq", "ineq"):
            rows = []
            for coeffs, rhs in getattr(self, name):
                coeffs = tuple(_rat(c) for c in coeffs)
                if len(coeffs) != self.dim:
                    raise ShapeMismatch(
                        f"{name} row has length {len(coeffs)}, expected {self.dim}"
                    )
                rows.append((coeffs, _rat(rhs)))
            object.__setattr__(self, name, tuple(rows))

    def with_rhs(self, eq_rhs: Sequence, ineq_rhs: Sequence) -> "HRep":
        """Same constraint matrices, new right-hand sides."""
        if len(eq_rhs) != len(self.eq) or len(ineq_rhs) != len(self.ineq):
            raise ShapeMismatch("right-hand side lengths do not match the rows")
        return HRep(
            self.dim,
            tuple((c, r) for (c, _), r in zip(self.eq, eq_rhs)),
            tuple((g, r) for (g, _), r in zip(self.ineq, ineq_rhs)),
        )

    def contains(self, x: Sequence) -> bool:
        x = tuple(_rat(v) for v in x)
        if len(x) != self.dim:
            raise ShapeMismatch("point has the wrong dimension")
        return all(_dot(c, x) == r for c, r in self.eq) and all(
            _dot(g, x) <= r for g, r in self.ineq
        )


@dataclass(frozen=True)
class VRep:
    vertices: Tuple[Point, ...]
    adjacency: frozenset = field(default_factory=frozenset)
    # inequality-row indices tight at each vertex
    active_sets: Tuple[frozenset, ...] = ()

    def __len__(self):
        return len(self.vertices)

    def index(self, point: Sequence) -> int:
        return self.vertices.index(tuple(_rat(v) for v in point))

    def edges(self):
        return sorted(self.adjacency)


# -- exact linear algebra -------------------------------------------------


def _rref(rows, ncols):
    """Reduced row echelon form of augmented rows ``coeffs + [rhs]``.

    Returns ``(reduced_rows, pivot_columns, consistent)``.
    """
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    consistent = all(row[ncols] == 0 for row in rows[r:]) if rows and len(rows[0]) > ncols else True
    return rows[:r], pivots, consistent


def rank(vectors: Sequence[Sequence]) -> int:
    vectors = [[_rat(v) for v in vec] for vec in vectors]
    if not vectors:
        return 0
    _, pivots, _ = _rref(vectors, len(vectors[0]))
    return len(pivots)


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _parametrize(h: HRep):
    """Solve the equalities: ``x = x0 + N y``.

    Returns ``(x0, basis)`` with ``basis`` a list of column vectors, or
    ``None`` if the equalities are inconsistent.
    """
    dim = h.dim
    aug = [list(c) + [r] for c, r in h.eq]
    reduced, pivots, consistent = _rref(aug, dim) if aug else ([], [], True)
    if not consistent:
        return None
    x0 = [Fraction(0)] * dim
    for row, p in zip(reduced, pivots):
        x0[p] = row[dim]
    free = [c for c in range(dim) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * dim
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return x0, basis


def _from_mpq(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _check_dim(h: HRep, limit: Optional[int]):
    limit = max_dim() if limit is None else limit
    if h.dim > limit:
        raise DimensionTooLarge(
            f"dimension {h.dim} exceeds the oracle limit {limit}", dim=h.dim, limit=limit
        )


@lru_cache(maxsize=4096)
def _vertices(h: HRep) -> Tuple[Point, ...]:
    param = _parametrize(h)
    if param is None:
        return ()
    x0, basis = param
    d = len(basis)
    ineq = h.ineq
    if d == 0:
        x = tuple(x0)
        return (x,) if all(_dot(g, x) <= r for g, r in ineq) else ()

    # inequalities in the reduced coordinates y
    reduced = []
    for g, r in ineq:
        coeffs = [_dot(g, b) for b in basis]
        reduced.append((coeffs, r - _dot(g, x0)))
    if rank([c for c, _ in reduced]) < d:
        raise UnboundedOrRankDeficient(
            "no choice of inequality rows gives a full-rank system",
            dim=h.dim,
            free=d,
        )

    # the basis search runs on gmpy2 rationals for speed; results go back
    # to Fraction
    reduced = [([mpq(c) for c in coeffs], mpq(r)) for coeffs, r in reduced]
    x0m = [mpq(v) for v in x0]
    basis_m = [[mpq(v) for v in b] for b in basis]
    found = set()
    k = len(reduced)

    def extend(start, system):
        depth = len(system)
        if depth == d:
            y = [mpq(0)] * d
            for coeffs, rhs, p in system:
                y[p] = rhs
            if all(sum(c * v for c, v in zip(coeffs, y)) <= r for coeffs, r in reduced):
                found.add(tuple(
                    x0m[c] + sum(y[t] * basis_m[t][c] for t in range(d)) for c in range(h.dim)
                ))
            return
        # not enough rows left to complete a basis
        for i in range(start, k - (d - depth) + 1):
            coeffs, rhs = reduced[i]
            for bc, br, p in system:
                f = coeffs[p]
                if f:
                    coeffs = [a - f * b for a, b in zip(coeffs, bc)]
                    rhs -= f * br
            p = next((c for c in range(d) if coeffs[c] != 0), None)
            if p is None:
                continue
            inv = 1 / coeffs[p]
            coeffs = [v * inv for v in coeffs]
            rhs *= inv
            new_system = []
            for bc, br, bp in system:
                f = bc[p]
                if f:
                    bc = [a - f * b for a, b in zip(bc, coeffs)]
                    br = br - f * rhs
                new_system.append((bc, br, bp))
            new_system.append((coeffs, rhs, p))
            extend(i + 1, new_system)

    extend(0, [])
    return tuple(sorted(tuple(_from_mpq(v) for v in x) for x in found))


def _active_sets(h: HRep, vertices) -> Tuple[frozenset, ...]:
    return tuple(
        frozenset(i for i, (g, r) in enumerate(h.ineq) if _dot(g, v) == r) for v in vertices
    )


def _adjacency(active) -> frozenset:
    # v, w span an edge iff the smallest face containing both (cut out by
    # their common tight rows) has no further vertex
    pairs = set()
    n = len(active)
    for i in range(n):
        for j in range(i + 1, n):
            common = active[i] & active[j]
            if not any(
                u != i and u != j and active[u] >= common for u in range(n)
            ):
                pairs.add((i, j))
    return frozenset(pairs)


@lru_cache(maxsize=1024)
def _vrep(h: HRep, with_adjacency: bool) -> VRep:
    verts = _vertices(h)
    active = _active_sets(h, verts)
    adj = _adjacency(active) if with_adjacency else frozenset()
    return VRep(verts, adj, active)


def enumerate_vertices(h: HRep, adjacency: bool = True, max_dim: Optional[int] = None) -> VRep:
    """Exact vertex list (lexicographically sorted) with active sets.

    The feasible set must be bounded; that is the caller's contract.  An
    empty polytope gives an empty vertex list.
    """
    _check_dim(h, max_dim)
    return _vrep(h, adjacency)


def minimize(h: HRep, objective: Sequence, max_dim: Optional[int] = None):
    """Minimum of ``<objective, x>`` over the polytope and its lex-smallest argmin."""
    objective = tuple(_rat(c) for c in objective)
    if len(objective) != h.dim:
        raise ShapeMismatch("objective has the wrong dimension")
    _check_dim(h, max_dim)
    verts = _vertices(h)
    if not verts:
        raise EmptyPolytope("cannot minimize over an empty polytope")
    best, arg = None, None
    for v in verts:  # sorted, so the first minimizer is lex-smallest
        val = _dot(objective, v)
        if best is None or val < best:
            best, arg = val, v
    return best, arg


def polytopes_equal(p: VRep, q: VRep) -> bool:
    return set(p.vertices) == set(q.vertices)


def translate(p: VRep, t: Sequence) -> VRep:
    t = tuple(_rat(v) for v in t)
    moved = [tuple(a + b for a, b in zip(v, t)) for v in p.vertices]
    order = sorted(range(len(moved)), key=lambda i: moved[i])
    where = {old: new for new, old in enumerate(order)}
    return VRep(
        tuple(moved[i] for i in order),
        frozenset(tuple(sorted((where[i], where[j]))) for i, j in p.adjacency),
        tuple(p.active_sets[i] for i in order) if p.active_sets else (),
    )


# -- minimal descriptions -------------------------------------------------


def minimal_description(h: HRep, max_dim: Optional[int] = None) -> HRep:
    """An irredundant description of the same polytope.

    Implicit equalities are promoted to equalities (keeping a linearly
    independent subset, original rows first), and only one inequality per
    facet is retained.  Row order is otherwise preserved, so a description
    that is already minimal comes back unchanged.
    """
    vrep = enumerate_vertices(h, adjacency=False, max_dim=max_dim)
    if not vrep.vertices:
        raise EmptyPolytope("empty polytope has no minimal description")
    nverts = len(vrep.vertices)
    tight_count = [0] * len(h.ineq)
    for active in vrep.active_sets:
        for i in active:
            tight_count[i] += 1
    implicit = [i for i in range(len(h.ineq)) if tight_count[i] == nverts]

    kept = []
    for row in list(h.eq) + [h.ineq[i] for i in implicit]:
        if rank([c for c, _ in kept] + [row[0]]) > len(kept):
            kept.append(row)
    d = h.dim - len(kept)

    facets = []
    seen = set()
    for i in range(len(h.ineq)):
        if i in implicit:
            continue
        face = frozenset(v for v, act in enumerate(vrep.active_sets) if i in act)
        if face in seen:
            continue
        if affine_dimension([vrep.vertices[v] for v in sorted(face)]) == d - 1:
            seen.add(face)
            facets.append(h.ineq[i])
    return HRep(h.dim, tuple(kept), tuple(facets))


def is_minimal(h: HRep, max_dim: Optional[int] = None) -> bool:
    """True when ``h`` has no redundant equality or inequality.

    Each inequality must cut out a distinct facet and the equalities must
    be independent and span the affine hull.
    """
    m = minimal_description(h, max_dim=max_dim)
    return len(m.eq) == len(h.eq) and len(m.ineq) == len(h.ineq)


# -- deformations ---------------------------------------------------------


@dataclass(frozen=True)
class DeformCheck:
    """Outcome of checking a right-hand side against a base polytope.

    ``verdict`` is ``"weak"``, ``"strong"`` or ``"not_deformation"``.  On
    failure ``reason`` says which condition broke and ``row`` / ``vertex``
    name the offending inequality row or base vertex (0-based).
    ``vertex_map[i]`` is the index in ``q`` of the image of base vertex ``i``.
    """

    verdict: str
    reason: Optional[str] = None
    row: Optional[int] = None
    vertex: Optional[int] = None
    vertex_map: Optional[Tuple[int, ...]] = None
    q: Optional[VRep] = None
    rhs: Optional[Tuple[Point, Point]] = None

    @property
    def is_deformation(self) -> bool:
        return self.verdict != "not_deformation"

    @property
    def images(self):
        if self.vertex_map is None:
            return None
        return tuple(self.q.vertices[i] for i in self.vertex_map)


def is_deformation(
    p0: HRep,
    q_rhs,
    p0_vertices: Optional[VRep] = None,
    check_minimal: bool = False,
    max_dim: Optional[int] = None,
) -> DeformCheck:
    """Check whether ``q_rhs = (a, b)`` is a deforming vector for ``p0``.

    ``p0`` must be a minimal description (pass ``check_minimal=True`` to
    verify it).  ``Q`` is ``E x = a, G x <= b``.  The check requires every
    inequality of ``Q`` to be attained, and the face of ``Q`` selected by
    the tight rows of each base vertex to be a single vertex of ``Q``.
    """
    a, b = q_rhs
    a = tuple(_rat(v) for v in a)
    b = tuple(_rat(v) for v in b)
    if check_minimal and not is_minimal(p0, max_dim=max_dim):
        raise InvalidInput("base description is not minimal")
    if p0_vertices is None:
        p0_vertices = enumerate_vertices(p0, adjacency=False, max_dim=max_dim)
    q = p0.with_rhs(a, b)
    qv = enumerate_vertices(q, adjacency=True, max_dim=max_dim)
    rhs = (a, b)
    if not qv.vertices:
        return DeformCheck("not_deformation", reason="empty", q=qv, rhs=rhs)

    for i, (g, r) in enumerate(q.ineq):
        low, _ = minimize(q, tuple(-c for c in g), max_dim=max_dim)
        if -low != r:
            return DeformCheck("not_deformation", reason="non_tight", row=i, q=qv, rhs=rhs)

    position = {v: k for k, v in enumerate(qv.vertices)}
    images = []
    for idx, active in enumerate(p0_vertices.active_sets):
        face = HRep(q.dim, q.eq + tuple(q.ineq[i] for i in sorted(active)), q.ineq)
        pts = enumerate_vertices(face, adjacency=False, max_dim=max_dim).vertices
        if len(pts) != 1 or pts[0] not in position:
            return DeformCheck(
                "not_deformation", reason="non_vertex_intersection", vertex=idx, q=qv, rhs=rhs
            )
        images.append(position[pts[0]])

    bijective = len(set(images)) == len(images) == len(qv.vertices)
    return DeformCheck(
        "weak" if bijective else "strong", vertex_map=tuple(images), q=qv, rhs=rhs
    )


def deformation_verdict(p0: HRep, q: HRep, max_dim: Optional[int] = None) -> DeformCheck:
    """Decide whether the polytope ``q`` is a deformation of ``p0``.

    ``p0`` is first reduced to a minimal description ``(E, G)``.  The only
    candidate deforming vector is the tight one: ``E`` must be constant on
    ``q`` and each ``G`` row gets its maximum over ``q``.  ``q`` must be
    exactly the polytope that right-hand side describes.
    """
    base = minimal_description(p0, max_dim=max_dim)
    qv = enumerate_vertices(q, adjacency=False, max_dim=max_dim)
    if not qv.vertices:
        return DeformCheck("not_deformation", reason="empty")
    alpha = []
    for c, _ in base.eq:
        values = {_dot(c, v) for v in qv.vertices}
        if len(values) != 1:
            return DeformCheck("not_deformation", reason="affine_hull")
        alpha.append(values.pop())
    beta = [max(_dot(g, v) for v in qv.vertices) for g, _ in base.ineq]
    described = enumerate_vertices(base.with_rhs(alpha, beta), adjacency=False, max_dim=max_dim)
    if not polytopes_equal(described, qv):
        return DeformCheck("not_deformation", reason="not_describable", rhs=(tuple(alpha), tuple(beta)))
    return is_deformation(base, (alpha, beta), max_dim=max_dim)


def edge_scalars(p0: VRep, images: Sequence[Sequence]):
    """``{(i, j): r}`` with ``phi(v_i) - phi(v_j) = r (v_i - v_j)`` per edge.

    ``r`` is ``None`` when no such scalar exists.
    """
    images = [tuple(_rat(c) for c in p) for p in images]
    if len(images) != len(p0.vertices):
        raise ShapeMismatch("one image per base vertex is required")
    out = {}
    for i, j in sorted(p0.adjacency):
        dv = [a - b for a, b in zip(p0.vertices[i], p0.vertices[j])]
        dq = [a - b for a, b in zip(images[i], images[j])]
        k = next(c for c, x in enumerate(dv) if x != 0)
        r = dq[k] / dv[k]
        out[(i, j)] = r if all(y == r * x for x, y in zip(dv, dq)) else None
    return out


def edge_check_deformation(p0: VRep, q: VRep, images: Sequence[Sequence]) -> bool:
    """Surjective onto ``Vert(q)`` and every base edge is scaled by some r >= 0."""
    images = [tuple(_rat(c) for c in p) for p in images]
    if set(images) != set(q.vertices):
        return False
    return all(r is not None and r >= 0 for r in edge_scalars(p0, images).values())
