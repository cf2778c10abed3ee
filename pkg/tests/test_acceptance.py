"""Acceptance criteria 1 to 13, all checked with exact rational arithmetic.

Each test carries ``@pytest.mark.criterion(k)``; the terminal summary prints
one PASS/FAIL line per criterion. Run directly with
``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""
import io
import itertools
import json
import math
import random
from fractions import Fraction
from pathlib import Path

import pytest

from teslerforge.cli import COMMANDS, run
from teslerforge.core import (
    TildeUpperTri,
    UpperTri,
    flow_hrep,
    hook_sum_tilde,
    hook_vector,
    positions,
    tesler_hrep,
)
from teslerforge.defcone import (
    DeformingVector,
    cone_contains,
    deform_vertex,
    face_index,
    q_polytope,
    tesler_deforms,
    tesler_translate,
)
from teslerforge.flow import (
    NegativeTail,
    NonRedundantDiagonal,
    critical_position,
    flow_point,
    forced_entries,
    is_deformation_of_tesler,
    is_feasible,
    translate_reduce,
)
from teslerforge.polyhedra import (
    deformation_verdict,
    enumerate_vertices,
    is_deformation,
    minimize,
    polytopes_equal,
    translate,
)
from teslerforge.tesler import (
    are_adjacent,
    dep_chain,
    edge_vector,
    first_differing_row,
    tesler_vertices,
    tightness_witnesses,
)

criterion = pytest.mark.criterion
FIXTURES = Path(__file__).parent / "fixtures" / "cli"


def positive_rational(rng):
    return Fraction(rng.randint(1, 9), rng.randint(1, 4))


def nonnegative_rational(rng):
    return Fraction(rng.randint(0, 3), rng.randint(1, 3)) if rng.random() < 0.7 else Fraction(0)


def oracle_vertex_set(h):
    return set(enumerate_vertices(h, adjacency=False).vertices)


# --- golden values --------------------------------------------------------


@criterion(1)
def test_golden_hook_sum():
    m = UpperTri.from_rows([[1, 2, 3], [4, 5], [10]])
    assert hook_vector(m) == (6, 7, 2)


@criterion(2)
def test_golden_vertices_and_edge(tesx_v, tesx_w):
    verts = tesler_vertices((2, 2, 3, 4))
    assert tesx_v in verts and tesx_w in verts
    assert are_adjacent(tesx_v, tesx_w)
    expected = UpperTri.from_rows([[0, -2, 2, 0], [0, 0, -2], [2, 0], [-2]])
    assert edge_vector(tesx_v, tesx_w) == expected
    assert expected == (dep_chain(tesx_w, 1).matrix - dep_chain(tesx_v, 1).matrix) * 2


@criterion(3)
def test_golden_deformation_map(cone_example):
    v = UpperTri.from_rows([[0, 1, 0, 0], [0, 2, 0], [3, 0], [1]])
    image = deform_vertex(v, DeformingVector(*cone_example), a0=(1, 1, 1, 1))
    assert image == UpperTri.from_rows([[1, 0, 3, 4], [5, 9, -7], [29, -9], [-11]])


# --- vertices and edges ---------------------------------------------------


@criterion(4)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_vertex_count_is_factorial(n):
    rng = random.Random(400 + n)
    for _ in range(10):
        a = tuple(positive_rational(rng) for _ in range(n))
        verts = tesler_vertices(a)
        assert len(verts) == math.factorial(n)
        assert len(set(verts)) == len(verts)
        if n <= 4:
            assert {v.entries for v in verts} == oracle_vertex_set(tesler_hrep(a))


@criterion(5)
@pytest.mark.parametrize("n,samples", [(3, 5), (4, 5), (5, 2)])
def test_edge_formula_on_every_oracle_edge(n, samples):
    rng = random.Random(500 + n)
    for _ in range(samples):
        a = tuple(positive_rational(rng) for _ in range(n))
        vrep = enumerate_vertices(tesler_hrep(a))
        verts = [UpperTri(n, p) for p in vrep.vertices]
        # simple polytope of dimension n(n-1)/2: every vertex has that many edges
        assert len(vrep.adjacency) == math.factorial(n) * math.comb(n, 2) // 2
        for i, j in vrep.adjacency:
            v, w = verts[i], verts[j]
            assert are_adjacent(v, w)
            k = first_differing_row(v, w)
            c = w[k, w.row_nonzeros(k)[0]]
            formula = (dep_chain(w, k).matrix - dep_chain(v, k).matrix) * c
            assert w - v == formula
            assert edge_vector(v, w) == formula
        for i, j in itertools.combinations(range(len(verts)), 2):
            assert are_adjacent(verts[i], verts[j]) == ((i, j) in vrep.adjacency)


# --- deformation cone -----------------------------------------------------


@criterion(6)
def test_cone_membership_matches_oracle():
    rng = random.Random(600)
    base = tesler_hrep((1, 1, 1))

    def value():
        return Fraction(rng.randint(-2, 2), rng.choice([1, 2]))

    inside = 0
    for _ in range(200):
        dv = DeformingVector(
            tuple(value() for _ in range(3)),
            TildeUpperTri(3, [value() for _ in positions(3, True)]),
        )
        oracle = is_deformation(base, (dv.a, dv.btilde.entries))
        assert cone_contains(dv) == oracle.is_deformation
        if cone_contains(dv):
            inside += 1
            t, a_t = tesler_translate(dv)
            moved = translate(enumerate_vertices(tesler_hrep(a_t)), t.entries)
            assert polytopes_equal(enumerate_vertices(q_polytope(dv)), moved)
    assert 0 < inside < 200


@criterion(7)
def test_weak_strong_split_on_grid():
    base = tesler_hrep((1, 1, 1))
    for a in itertools.product(range(3), repeat=3):
        oracle = deformation_verdict(base, tesler_hrep(a))
        assert oracle.is_deformation
        both_positive = a[0] > 0 and a[1] > 0
        assert (oracle.verdict == "weak") == both_positive
        assert (oracle.verdict == "strong") == (not both_positive)
        mine = tesler_deforms(a, (1, 1, 1))
        expected = "normally_equivalent" if both_positive else "deformation"
        assert mine.verdict == expected
        assert (face_index(a) == face_index((1, 1, 1))) == both_positive


@criterion(8)
def test_face_inclusion_matches_oracle_on_pairs():
    grid = list(itertools.product(range(3), repeat=3))
    verdicts = {"weak": "normally_equivalent", "strong": "deformation"}
    for a, b in itertools.product(grid, repeat=2):
        mine = tesler_deforms(a, b)
        oracle = deformation_verdict(tesler_hrep(b), tesler_hrep(a))
        assert (mine.verdict != "neither") == oracle.is_deformation, (a, b)
        assert (mine.verdict != "neither") == (face_index(a) <= face_index(b))
        if oracle.is_deformation:
            assert mine.verdict == verdicts[oracle.verdict], (a, b)
        converse = deformation_verdict(tesler_hrep(a), tesler_hrep(b))
        assert converse.is_deformation == (face_index(b) <= face_index(a))


# --- flow polytopes -------------------------------------------------------


@criterion(9)
def test_flow_characterization_sweep():
    base = tesler_hrep((1, 1, 1, 1))
    counts = {True: 0, False: 0}
    for a in itertools.product(range(-2, 3), repeat=4):
        if not is_feasible(a):
            continue
        verdict = is_deformation_of_tesler(a)
        oracle = deformation_verdict(base, flow_hrep(a))
        assert verdict.is_deformation == oracle.is_deformation, a
        counts[verdict.is_deformation] += 1
        if verdict.is_deformation:
            continue
        cert, a_hat = verdict.certificate, verdict.a_hat
        if isinstance(cert, NegativeTail):
            reduced = flow_hrep(a_hat)
            minima = [minimize(reduced, [int(p == q) for q in positions(4)])[0] for p in positions(4, True)]
            assert cert.btilde == TildeUpperTri(4, [-x for x in minima])
            assert cert.eta_m == hook_sum_tilde(cert.btilde, cert.m)
            assert cert.neg_a_m == -a_hat[cert.m - 1]
            assert cert.eta_m < cert.neg_a_m
            assert not cone_contains(DeformingVector(a_hat, cert.btilde))
            assert reduced.contains(cert.witness.entries)
        else:
            assert isinstance(cert, NonRedundantDiagonal)
            assert tesler_hrep(a_hat).contains(cert.g.entries)
            assert cert.g[4, 4] < 0
            assert not flow_hrep(a_hat).contains(cert.g.entries)
    assert counts[True] > 0 and counts[False] > 0


def feasible_samples():
    """Fifty feasible net flows at n = 3, 4, a third of them single points."""
    rng = random.Random(1000)
    samples = []
    for n in (3, 4):
        while sum(len(x) == n for x in samples) < 25:
            if rng.random() < 0.35:
                # blocks (x, -x) and zeros give a single-point flow polytope
                a = []
                while len(a) < n:
                    x = Fraction(rng.randint(1, 3), rng.choice([1, 2]))
                    a += [x, -x] if len(a) + 2 <= n and rng.random() < 0.6 else [Fraction(0)]
                a = tuple(a[:n])
            else:
                a = tuple(Fraction(rng.randint(-2, 3), rng.choice([1, 2])) for _ in range(n))
            if is_feasible(a):
                samples.append(a)
    return samples


SAMPLES = feasible_samples()


@criterion(10)
def test_reduction_identities():
    points = 0
    for a in SAMPLES:
        n = len(a)
        l, _ = critical_position(a)
        a_hat, t = translate_reduce(a)
        actual = enumerate_vertices(flow_hrep(a))
        moved = translate(enumerate_vertices(flow_hrep(a_hat)), t.entries)
        assert polytopes_equal(actual, moved), a
        if l == n:
            points += 1
            assert actual.vertices == (flow_point(a).entries,)
    assert 0 < points < len(SAMPLES)


@criterion(11)
def test_forced_entries_on_samples():
    for a in SAMPLES:
        n = len(a)
        l, _ = critical_position(a)
        forced = forced_entries(a)
        assert set(forced) == {(i, j) for i in range(1, l) for j in range(i, n + 1)}
        for p in oracle_vertex_set(flow_hrep(a)):
            v = UpperTri(n, p)
            assert all(v[ij] == x for ij, x in forced.items()), a


@criterion(12)
def test_tightness_witnesses():
    rng = random.Random(1200)
    for k in range(20):
        n = 2 + k % 4
        a = tuple(nonnegative_rational(rng) for _ in range(n))
        m1, m2 = tightness_witnesses(a)
        h = tesler_hrep(a)
        assert h.contains(m1.entries) and h.contains(m2.entries)
        for ij in positions(n, True):
            assert min(m1[ij], m2[ij]) == 0, (a, ij)


# --- command line ---------------------------------------------------------


@criterion(13)
def test_cli_is_deterministic():
    cases = json.loads((FIXTURES / "cases.json").read_text())
    covered = {tuple(c["argv"][:2]) for c in cases}
    assert {(g, c) for g, cmds in COMMANDS.items() for c in cmds} <= covered
    for case in cases:
        argv = [x.replace("{fixtures}", str(FIXTURES)) for x in case["argv"]]
        outputs = []
        for _ in range(2):
            out = io.StringIO()
            outputs.append((run(argv, stdout=out, stderr=io.StringIO()), out.getvalue()))
        assert outputs[0] == outputs[1]
        assert outputs[0] == (case["exit"], (FIXTURES / f"{case['name']}.out").read_text())


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
