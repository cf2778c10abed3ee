"""Vertices and edges of Tesler polytopes from support patterns.

A point of ``Tes_n(a)`` (``a >= 0``) is a vertex exactly when every row
holds at most one nonzero entry.  Fixing which column carries the nonzero
of each row determines the point row by row: the nonzero of row ``i``
equals ``a_i`` plus everything flowing into column ``i`` from above.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    UpperTri,
    hook_vector,
    rat_vector,
    support,
)
from .errors import (
    FormulaViolation,
    NegativeInput,
    NotAdjacent,
    NotAVertex,
    SizeLimitExceeded,
    ZeroRow,
)

DEFAULT_MAX_N = 8


def _nonnegative(a) -> Tuple[Fraction, ...]:
    a = rat_vector(a)
    if any(x < 0 for x in a):
        raise NegativeInput(f"hook vector must be nonnegative, got {[str(x) for x in a]}")
    return a


def tesler_vertices(a: Sequence, max_n: int = DEFAULT_MAX_N) -> List[UpperTri]:
    """All vertices of ``Tes_n(a)``, sorted lexicographically (row-major).

    Rows are filled top-down.  A row whose required value is zero is left
    empty, since any column choice would produce the same point.
    """
    a = _nonnegative(a)
    n = len(a)
    if n > max_n:
        raise SizeLimitExceeded(f"n={n} exceeds the enumeration limit {max_n}", n=n, limit=max_n)

    found = set()
    inflow = [Fraction(0)] * (n + 2)
    chosen = {}

    def fill(i):
        if i > n:
            found.add(UpperTri.from_map(n, chosen))
            return
        value = a[i - 1] + inflow[i]
        if value == 0:
            fill(i + 1)
            return
        for j in range(i, n + 1):
            chosen[(i, j)] = value
            if j > i:
                inflow[j] += value
            fill(i + 1)
            if j > i:
                inflow[j] -= value
            del chosen[(i, j)]

    fill(1)
    return sorted(found)


def _row_entry(v: UpperTri, i: int) -> Optional[int]:
    cols = v.row_nonzeros(i)
    return cols[0] if cols else None


def _check_vertex(v: UpperTri, exact: bool = False):
    if any(x < 0 for x in v.entries):
        raise NotAVertex("vertex entries must be nonnegative")
    for i in range(1, v.n + 1):
        k = len(v.row_nonzeros(i))
        if k > 1 or (exact and k != 1):
            want = "exactly" if exact else "at most"
            raise NotAVertex(f"row {i} must have {want} one nonzero entry", row=i)


def _row_operations(v: UpperTri, w: UpperTri) -> List[str]:
    ops = []
    for i in range(1, v.n + 1):
        jv, jw = _row_entry(v, i), _row_entry(w, i)
        if jv == jw:
            ops.append("keep")
        elif jw is None:
            ops.append("drop")
        elif jv is None:
            ops.append("add")
        else:
            ops.append("move")
    return ops


def are_adjacent(v: UpperTri, w: UpperTri) -> bool:
    """Edge test on supports.

    Each row of ``supp(w)`` must come from ``supp(v)`` by keeping, dropping,
    adding (on a zero row) or moving the single 1, with exactly one move.
    """
    _check_vertex(v)
    _check_vertex(w)
    if v.n != w.n or hook_vector(v) != hook_vector(w):
        raise NotAVertex("v and w are not vertices of the same Tesler polytope")
    return _row_operations(v, w).count("move") == 1


def tesler_edges(a: Sequence, max_n: int = DEFAULT_MAX_N):
    """``(vertices, [(i, j), ...])`` with 0-based indices, ``i < j``."""
    verts = tesler_vertices(a, max_n=max_n)
    edges = [
        (i, j)
        for i in range(len(verts))
        for j in range(i + 1, len(verts))
        if are_adjacent(verts[i], verts[j])
    ]
    return verts, edges


@dataclass(frozen=True)
class DepChain:
    start_row: int
    chain: Tuple[Tuple[int, int], ...]
    matrix: UpperTri


def dep_chain(v: UpperTri, k: int) -> DepChain:
    """Follow the nonzero of row ``k``, then of the row it points into,
    until a diagonal entry is reached."""
    _check_vertex(v)
    if not 1 <= k <= v.n:
        raise ZeroRow(f"row {k} out of range")
    chain = []
    i = k
    while True:
        j = _row_entry(v, i)
        if j is None:
            if i == k:
                raise ZeroRow(f"row {k} of the vertex is zero", row=k)
            # cannot happen for a genuine vertex: a positive entry (p, i) forces row i nonzero
            raise NotAVertex(f"chain from row {k} reaches zero row {i}")
        chain.append((i, j))
        if j == i:
            break
        i = j
    return DepChain(k, tuple(chain), UpperTri.from_map(v.n, {ij: 1 for ij in chain}))


def first_differing_row(v: UpperTri, w: UpperTri) -> Optional[int]:
    sv, sw = support(v), support(w)
    for i in range(1, v.n + 1):
        if sv.row(i) != sw.row(i):
            return i
    return None


def edge_vector(v: UpperTri, w: UpperTri) -> UpperTri:
    """``w - v``, cross-checked against ``c (D_w(k) - D_v(k))``.

    ``k`` is the first row where the supports differ and ``c`` the nonzero
    of row ``k`` in ``v`` (which must equal that of ``w``).
    """
    if not are_adjacent(v, w):
        raise NotAdjacent("edge vector requires adjacent vertices")
    k = first_differing_row(v, w)
    c = v[k, _row_entry(v, k)]
    if w[k, _row_entry(w, k)] != c:
        raise FormulaViolation(f"row {k} nonzeros differ between v and w", row=k)
    diff = w - v
    predicted = (dep_chain(w, k).matrix - dep_chain(v, k).matrix) * c
    if diff != predicted:
        raise FormulaViolation("edge vector does not match the dependency-chain formula", row=k)
    return diff


def support_map_vertex(v: UpperTri, a: Sequence) -> UpperTri:
    """The unique point of ``Tes_n(a)`` supported inside ``supp(v)``.

    ``v`` must have exactly one nonzero per row (a vertex of a Tesler
    polytope with positive hook sums).
    """
    _check_vertex(v, exact=True)
    a = _nonnegative(a)
    n = v.n
    if len(a) != n:
        raise NotAVertex("hook vector and vertex sizes differ")
    inflow = [Fraction(0)] * (n + 2)
    values = {}
    for i in range(1, n + 1):
        j = _row_entry(v, i)
        value = a[i - 1] + inflow[i]
        values[(i, j)] = value
        if j > i:
            inflow[j] += value
    return UpperTri.from_map(n, values)


def deformation_map(a0: Sequence, a: Sequence, max_n: int = DEFAULT_MAX_N):
    """``[(v, phi(v))]`` over the vertices of ``Tes_n(a0)``, ``a0 > 0``."""
    a0 = _nonnegative(a0)
    if any(x == 0 for x in a0):
        raise NegativeInput("base hook vector must be strictly positive")
    return [(v, support_map_vertex(v, a)) for v in tesler_vertices(a0, max_n=max_n)]


def tightness_witnesses(a: Sequence) -> Tuple[UpperTri, UpperTri]:
    """Two points of ``Tes_n(a)`` that between them zero every coordinate
    except ``(n, n)``: the diagonal matrix, and the path along the
    superdiagonal carrying the prefix sums."""
    a = _nonnegative(a)
    n = len(a)
    m1 = UpperTri.diag(a)
    prefix = Fraction(0)
    values = {}
    for i in range(1, n):
        prefix += a[i - 1]
        values[(i, i + 1)] = prefix
    values[(n, n)] = sum(a, Fraction(0))
    m2 = UpperTri.from_map(n, values)
    for m in (m1, m2):
        assert hook_vector(m) == a and all(x >= 0 for x in m.entries)
    return m1, m2
