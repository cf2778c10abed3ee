"""Coordinates on the complete acyclic digraph on ``n + 1`` nodes.

A point of U(n) is stored as an upper-triangular ``n x n`` matrix with
1-based indices.  Entry ``(i, j)`` with ``i < j`` is the edge ``(i, j)``;
the diagonal entry ``(i, i)`` is the edge ``(i, n + 1)``.  Flattened
vectors are always row-major over the upper triangle::

    (1,1), (1,2), ..., (1,n), (2,2), ..., (n,n)

Ũ(n) is the same space with the ``(n, n)`` coordinate removed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .errors import IndexOutOfRange, InvalidInput, ShapeMismatch
from .polyhedra import HRep

Index = Tuple[int, int]


def rat(x) -> Fraction:
    """Exact rational from an int, Fraction or string such as ``"3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidInput(f"{x!r} is not an exact rational")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidInput(f"cannot read {x!r} as a rational")


def rat_vector(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


@lru_cache(maxsize=None)
def positions(n: int, tilde: bool = False) -> Tuple[Index, ...]:
    pos = tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))
    return pos[:-1] if tilde else pos


@lru_cache(maxsize=None)
def _lookup(n: int, tilde: bool) -> Dict[Index, int]:
    return {ij: k for k, ij in enumerate(positions(n, tilde))}


class _Triangular:
    """Shared storage for :class:`UpperTri` and :class:`TildeUpperTri`."""

    _tilde = False

    def __init__(self, n: int, entries: Sequence):
        if not isinstance(n, int) or n < 1:
            raise ShapeMismatch(f"size must be a positive integer, got {n!r}")
        entries = rat_vector(entries)
        expected = len(positions(n, self._tilde))
        if len(entries) != expected:
            raise ShapeMismatch(f"expected {expected} entries for n={n}, got {len(entries)}")
        self._n = n
        self._entries = entries

    @property
    def n(self) -> int:
        return self._n

    @property
    def entries(self) -> Tuple[Fraction, ...]:
        return self._entries

    def as_vector(self) -> Tuple[Fraction, ...]:
        return self._entries

    @classmethod
    def zeros(cls, n: int):
        return cls(n, [0] * len(positions(n, cls._tilde)))

    @classmethod
    def from_map(cls, n: int, values: Dict[Index, object]):
        lookup = _lookup(n, cls._tilde)
        entries = [Fraction(0)] * len(lookup)
        for ij, v in values.items():
            if ij not in lookup:
                raise IndexOutOfRange(f"position {ij} is not a coordinate for n={n}")
            entries[lookup[ij]] = rat(v)
        return cls(n, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if cls._tilde and (not rows or len(rows[-1]) > 0):
            rows.append([])  # the empty final row may be left out
        n = len(rows)
        if n == 0:
            raise ShapeMismatch("at least one row is required")
        entries = []
        for i, row in enumerate(rows, start=1):
            want = n - i + 1 - (1 if cls._tilde and i == n else 0)
            if len(row) != want:
                raise ShapeMismatch(f"row {i} has {len(row)} entries, expected {want}")
            entries.extend(row)
        return cls(n, entries)

    def rows(self):
        out = []
        for i in range(1, self._n + 1):
            last = self._n - 1 if self._tilde and i == self._n else self._n
            out.append([self[i, j] for j in range(i, last + 1)])
        return out

    def items(self):
        return zip(positions(self._n, self._tilde), self._entries)

    def __getitem__(self, ij: Index) -> Fraction:
        try:
            return self._entries[_lookup(self._n, self._tilde)[tuple(ij)]]
        except KeyError:
            raise IndexOutOfRange(f"position {ij} is not a coordinate for n={self._n}")

    def _check_same(self, other):
        if type(other) is not type(self) or other._n != self._n:
            raise ShapeMismatch("operands must have the same type and size")

    def __add__(self, other):
        self._check_same(other)
        return type(self)(self._n, [a + b for a, b in zip(self._entries, other._entries)])

    def __sub__(self, other):
        self._check_same(other)
        return type(self)(self._n, [a - b for a, b in zip(self._entries, other._entries)])

    def __neg__(self):
        return type(self)(self._n, [-a for a in self._entries])

    def __mul__(self, c):
        c = rat(c)
        return type(self)(self._n, [c * a for a in self._entries])

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(other) is type(self) and other._n == self._n and other._entries == self._entries

    def __hash__(self):
        return hash((type(self).__name__, self._n, self._entries))

    def __lt__(self, other):
        self._check_same(other)
        return self._entries < other._entries

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows())
        return f"{type(self).__name__}([{rows}])"


class UpperTri(_Triangular):
    """A point of U(n)."""

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "UpperTri":
        return cls.from_map(n, {(i, j): 1})

    @classmethod
    def diag(cls, values: Sequence) -> "UpperTri":
        values = rat_vector(values)
        return cls.from_map(len(values), {(i, i): v for i, v in enumerate(values, start=1)})

    def project(self) -> "TildeUpperTri":
        """Drop the ``(n, n)`` entry."""
        return TildeUpperTri(self._n, self._entries[:-1])

    def row_nonzeros(self, i: int):
        return [j for j in range(i, self._n + 1) if self[i, j] != 0]


class TildeUpperTri(_Triangular):
    """A point of Ũ(n): U(n) without its ``(n, n)`` coordinate."""

    _tilde = True

    def extend(self, last) -> UpperTri:
        return UpperTri(self._n, self._entries + (rat(last),))


@dataclass(frozen=True)
class SupportPattern:
    n: int
    bits: Tuple[int, ...]

    def __getitem__(self, ij: Index) -> int:
        return self.bits[_lookup(self.n, False)[tuple(ij)]]

    def row(self, i: int) -> Tuple[int, ...]:
        return tuple(self[i, j] for j in range(i, self.n + 1))

    def ones(self):
        return [ij for ij, b in zip(positions(self.n), self.bits) if b]

    def __le__(self, other: "SupportPattern") -> bool:
        if other.n != self.n:
            raise ShapeMismatch("patterns of different size are incomparable")
        return all(a <= b for a, b in zip(self.bits, other.bits))

    def __ge__(self, other: "SupportPattern") -> bool:
        return other <= self


def _check_index(n: int, i: int, upper: int):
    if not isinstance(i, int) or not 1 <= i <= upper:
        raise IndexOutOfRange(f"hook index {i!r} outside 1..{upper} for n={n}")


def _hook(t: _Triangular, i: int) -> Fraction:
    n = t.n
    last = n - 1 if isinstance(t, TildeUpperTri) and i == n else n
    out = sum((t[i, j] for j in range(i, last + 1)), Fraction(0))
    return out - sum((t[j, i] for j in range(1, i)), Fraction(0))


def hook_sum(m: UpperTri, i: int) -> Fraction:
    """``m[i,i] + sum_{j>i} m[i,j] - sum_{j<i} m[j,i]``."""
    _check_index(m.n, i, m.n)
    return _hook(m, i)


def hook_vector(m: UpperTri) -> Tuple[Fraction, ...]:
    return tuple(_hook(m, i) for i in range(1, m.n + 1))


def hook_sum_tilde(b: TildeUpperTri, i: int) -> Fraction:
    """Hook sum on Ũ(n); only rows ``1..n-1`` are defined."""
    _check_index(b.n, i, b.n - 1)
    return _hook(b, i)


def hook_vector_tilde(b: TildeUpperTri) -> Tuple[Fraction, ...]:
    return tuple(_hook(b, i) for i in range(1, b.n))


def support(m: _Triangular) -> SupportPattern:
    if isinstance(m, TildeUpperTri):
        raise ShapeMismatch("support is defined on U(n)")
    return SupportPattern(m.n, tuple(int(v != 0) for v in m.entries))


@lru_cache(maxsize=None)
def hook_matrix(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Rows of the hook-sum map: the incidence matrix of the digraph with
    the row of node ``n + 1`` removed, columns in row-major order."""
    rows = []
    for i in range(1, n + 1):
        row = []
        for r, c in positions(n):
            if r == i:
                row.append(Fraction(1))
            elif c == i and r < i:
                row.append(Fraction(-1))
            else:
                row.append(Fraction(0))
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def projection_matrix(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Rows of the projection U(n) -> Ũ(n)."""
    dim = len(positions(n))
    return tuple(
        tuple(Fraction(int(c == k)) for c in range(dim)) for k in range(dim - 1)
    )


def hrep_from_rhs(a: Sequence, btilde: Sequence) -> HRep:
    """``L_n m = a`` and ``-P_n m <= btilde`` (btilde flattened row-major)."""
    a = rat_vector(a)
    n = len(a)
    if n < 1:
        raise ShapeMismatch("hook vector must be nonempty")
    btilde = rat_vector(btilde)
    if len(btilde) != len(positions(n, True)):
        raise ShapeMismatch("inequality right-hand side has the wrong length")
    eq = tuple(zip(hook_matrix(n), a))
    ineq = tuple((tuple(-c for c in row), r) for row, r in zip(projection_matrix(n), btilde))
    return HRep(len(positions(n)), eq, ineq)


def tesler_hrep(a: Sequence) -> HRep:
    """``L_n m = a``, ``-P_n m <= 0``: nonnegativity on every entry but ``(n, n)``."""
    a = rat_vector(a)
    return hrep_from_rhs(a, [0] * len(positions(len(a), True)))


def flow_hrep(a: Sequence) -> HRep:
    """Net-flow polytope: ``L_n m = a`` and ``-m <= 0`` on every entry."""
    a = rat_vector(a)
    n = len(a)
    dim = len(positions(n))
    ineq = tuple(
        (tuple(Fraction(-int(c == k)) for c in range(dim)), Fraction(0)) for k in range(dim)
    )
    return HRep(dim, tuple(zip(hook_matrix(n), a)), ineq)
