"""Flow polytopes on the complete acyclic digraph and when they deform a
Tesler polytope.

``Flow_n(a)`` is ``{m : L_n m = a, m >= 0}``.  It differs from the Tesler
description only by the extra constraint ``m_nn >= 0``, and it may use a
hook vector with negative entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Dict, Optional, Sequence, Tuple, Union

from .core import (
    TildeUpperTri,
    UpperTri,
    flow_hrep,
    hook_sum_tilde,
    hook_vector,
    positions,
    rat_vector,
    tesler_hrep,
)
from .errors import FormulaViolation, Infeasible, PreconditionViolated
from .polyhedra import minimize

Vector = Tuple[Fraction, ...]


def prefix_sums(a: Sequence) -> Vector:
    return tuple(accumulate(rat_vector(a), initial=Fraction(0)))[1:]


def is_feasible(a: Sequence) -> bool:
    return all(s >= 0 for s in prefix_sums(a))


def _feasible(a) -> Vector:
    a = rat_vector(a)
    if not a:
        raise Infeasible("net flow vector must be nonempty")
    bad = [k for k, s in enumerate(prefix_sums(a), start=1) if s < 0]
    if bad:
        raise Infeasible(f"prefix sum up to position {bad[0]} is negative", position=bad[0])
    return a


def critical_position(a: Sequence) -> Tuple[int, Tuple[int, ...]]:
    """``(l, voided)``.

    Position ``i < n`` is voided when ``a_i > 0`` and ``a_i + a_{i+1} = 0``.
    ``l`` is the first positive, non-voided position below ``n``, or ``n``.
    """
    a = _feasible(a)
    n = len(a)
    voided = tuple(i for i in range(1, n) if a[i - 1] > 0 and a[i - 1] + a[i] == 0)
    l = next((i for i in range(1, n) if a[i - 1] > 0 and i not in voided), n)
    return l, voided


def forced_entries(a: Sequence) -> Dict[Tuple[int, int], Fraction]:
    """Entries of rows ``1..l-1`` shared by every flow in ``Flow_n(a)``."""
    a = _feasible(a)
    n = len(a)
    l, voided = critical_position(a)
    out = {}
    for i in range(1, l):
        for j in range(i, n + 1):
            out[(i, j)] = Fraction(0)
    for i in voided:
        if i < l:
            out[(i, i + 1)] = a[i - 1]
    return out


def flow_point(a: Sequence) -> UpperTri:
    """The single flow when the critical position is ``n``."""
    a = _feasible(a)
    n = len(a)
    l, _ = critical_position(a)
    if l != n:
        raise PreconditionViolated(f"critical position is {l}, so the polytope is not a point")
    values = forced_entries(a)
    values[(n, n)] = a[-1] + sum((values[(p, n)] for p in range(1, n)), Fraction(0))
    return UpperTri.from_map(n, values)


def translate_reduce(a: Sequence) -> Tuple[Vector, UpperTri]:
    """``(a_hat, t)`` with ``Flow_n(a) = Flow_n(a_hat) + t``.

    For ``l < n`` the result has zeros before ``l``, ``a_hat_l > 0`` and
    ``a_hat_{l+1} >= 0``, and agrees with ``a`` from ``l + 2`` on.  For
    ``l = n`` the polytope is the point ``t`` and ``a_hat`` is zero.
    """
    a = _feasible(a)
    n = len(a)
    l, voided = critical_position(a)
    if l == n:
        return (Fraction(0),) * n, flow_point(a)
    shift = {(i, i + 1): a[i - 1] for i in voided if i < l}
    hat = [Fraction(0)] * (l - 1) + list(a[l - 1:])
    if hat[l] < 0:
        c = -hat[l]
        shift[(l, l + 1)] = c
        hat[l - 1] -= c
        hat[l] = Fraction(0)
    return tuple(hat), UpperTri.from_map(n, shift)


def _reduced_shape(a: Vector) -> int:
    """Check the normalised shape and return ``l``."""
    n = len(a)
    l = next((i for i in range(1, n + 1) if a[i - 1] != 0), None)
    if l is None or l >= n or a[l - 1] < 0 or a[l] < 0:
        raise PreconditionViolated(
            "expected leading zeros, then a positive entry followed by a nonnegative one"
        )
    return l


def first_negative(a: Sequence) -> Optional[int]:
    return next((i for i, x in enumerate(rat_vector(a), start=1) if x < 0), None)


def witness_flow(a: Sequence, m: Optional[int] = None) -> UpperTri:
    """A flow in ``Flow_n(a)`` that routes exactly ``-a_m`` into column ``m``
    from rows ``l..m-1`` with a positive share from row ``l``, and leaves
    row ``m`` and rows ``1..l-1`` empty.

    ``a`` must already be in reduced shape, with its first negative entry
    at ``m`` where ``l + 2 <= m < n``.
    """
    a = _feasible(a)
    n = len(a)
    l = _reduced_shape(a)
    neg = first_negative(a)
    if m is None:
        m = neg
    if neg is None or m != neg or not l + 2 <= m < n:
        raise PreconditionViolated(
            f"need the first negative entry at some m with l + 2 <= m < n (l={l}, n={n})"
        )
    sums = prefix_sums(a)

    def s(k):
        return sums[k - 1] if k >= 1 else Fraction(0)

    need = -a[m - 1]
    k = next(k for k in range(l, m) if s(k - 1) < need <= s(k))
    c = {i: Fraction(0) for i in range(l, m)}
    for i in range(l, k):
        c[i] = a[i - 1]
    c[k] = need - s(k - 1)

    values = {}
    for i in range(l, m):
        values[(i, m)] = c[i]
        values[(i, m + 1)] = a[i - 1] - c[i]
    for i in range(m + 1, n):
        values[(i, i + 1)] = s(i)
    values[(n, n)] = s(n)
    f = UpperTri.from_map(n, values)

    checks = (
        hook_vector(f) == a and all(x >= 0 for x in f.entries),
        f[l, m] > 0,
        sum((f[i, m] for i in range(l, m)), Fraction(0)) == need,
        not f.row_nonzeros(m),
        all(not f.row_nonzeros(i) for i in range(1, l)),
    )
    if not all(checks):
        raise FormulaViolation("witness flow construction failed its own checks")
    return f


@dataclass(frozen=True)
class Representable:
    """``Flow_n(a) = {L_n m = a, -P_n m <= btilde}`` and every row is attained."""

    btilde: TildeUpperTri
    kind: str = "representable"


@dataclass(frozen=True)
class NonRedundantDiagonal:
    """``g`` satisfies the description without ``m_nn >= 0`` but has ``g_nn < 0``."""

    g: UpperTri
    kind: str = "non_redundant_diagonal"


def tight_description(a: Sequence) -> Union[Representable, NonRedundantDiagonal]:
    a = _feasible(a)
    n = len(a)
    relaxed = tesler_hrep(a)
    dim = len(positions(n))
    corner = tuple(Fraction(int(k == dim - 1)) for k in range(dim))
    low, arg = minimize(relaxed, corner)
    if low < 0:
        diag = UpperTri.diag(a)
        if a[-1] < 0 and relaxed.contains(diag.entries):
            return NonRedundantDiagonal(diag)
        return NonRedundantDiagonal(UpperTri(n, arg))

    flows = flow_hrep(a)
    mins = []
    for k in range(dim - 1):
        unit = tuple(Fraction(int(c == k)) for c in range(dim))
        mins.append(-minimize(flows, unit)[0])
    return Representable(TildeUpperTri(n, mins))


@dataclass(frozen=True)
class PointPolytope:
    point: UpperTri
    kind: str = "point_polytope"


@dataclass(frozen=True)
class AllNonnegTail:
    kind: str = "all_nonneg_tail"


@dataclass(frozen=True)
class NegativeTail:
    """``eta_m(btilde) < -a_hat_m``: the tight right-hand side leaves the cone."""

    m: int
    eta_m: Fraction
    neg_a_m: Fraction
    btilde: TildeUpperTri
    witness: UpperTri
    kind: str = "negative_tail"


Certificate = Union[PointPolytope, AllNonnegTail, NegativeTail, NonRedundantDiagonal]


@dataclass(frozen=True)
class FlowVerdict:
    """Decision for ``Flow_n(a)``.  Certificates that need a witness refer
    to the reduced vector ``a_hat``, with ``Flow_n(a) = Flow_n(a_hat) + t``."""

    is_deformation: bool
    l: int
    voided: Tuple[int, ...]
    certificate: Certificate
    a: Vector
    a_hat: Vector
    t: UpperTri


def is_deformation_of_tesler(a: Sequence) -> FlowVerdict:
    """Whether ``Flow_n(a)`` is a deformation of ``Tes_n(a0)`` for positive ``a0``.

    The answer is yes exactly when ``l = n`` or ``a_i >= 0`` for every
    ``i >= l + 2``.  A negative answer is backed by a certificate computed
    on the reduced vector.
    """
    a = _feasible(a)
    n = len(a)
    l, voided = critical_position(a)
    a_hat, t = translate_reduce(a)
    if l == n:
        return FlowVerdict(True, l, voided, PointPolytope(t), a, a_hat, t)
    if all(x >= 0 for x in a[l + 1:]):
        return FlowVerdict(True, l, voided, AllNonnegTail(), a, a_hat, t)

    m = first_negative(a_hat)
    tight = tight_description(a_hat)
    if isinstance(tight, NonRedundantDiagonal):
        cert: Certificate = tight
    else:
        if m == n:
            raise FormulaViolation("a negative last entry must make m_nn >= 0 essential")
        eta_m = hook_sum_tilde(tight.btilde, m)
        if not eta_m < -a_hat[m - 1]:
            raise FormulaViolation("tight right-hand side unexpectedly lies in the cone")
        cert = NegativeTail(m, eta_m, -a_hat[m - 1], tight.btilde, witness_flow(a_hat, m))
    return FlowVerdict(False, l, voided, cert, a, a_hat, t)
