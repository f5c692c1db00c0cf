import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peelkit import catalog
from peelkit.geometry import axis_rotation, mirror
from peelkit.peeling import (DegeneratePlaneError, Handedness, NotAdjacentError, Outcome,
                             PeelConfig, Rule, SidePlane, is_left, peel, peel_all_pairs,
                             start_pairs)

PLANE = SidePlane(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))


def test_is_left_examples():
    assert not is_left(PLANE, np.array([0.0, 1.0, 0.0]))
    assert is_left(PLANE, np.array([0.0, -1.0, 0.0]))
    assert not is_left(PLANE, np.array([0.0, 0.0, 0.5]))


def test_side_plane_normal_orthogonal():
    rng = np.random.default_rng(0)
    for _ in range(20):
        plane = SidePlane(rng.normal(size=3), rng.normal(size=3))
        assert abs(plane.normal @ plane.c1) < 1e-12
        assert abs(plane.normal @ plane.ck) < 1e-12


def test_degenerate_plane_signalled():
    plane = SidePlane(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -2.0]))
    assert plane.degenerate()
    with pytest.raises(DegeneratePlaneError):
        is_left(plane, np.array([1.0, 0.0, 0.0]))


def test_config_validation():
    with pytest.raises(ValueError):
        PeelConfig(tol=0)
    with pytest.raises(ValueError):
        PeelConfig(on_plane="maybe")
    assert PeelConfig(handedness="left").handedness is Handedness.LEFT


def test_cube_all_pairs_complete(runs):
    seqs = runs("cube")
    assert len(seqs) == 24
    assert all(s.complete and len(s) == 6 for s in seqs)


def test_tetrahedron_twelve_runs(runs):
    seqs = runs("tetrahedron")
    assert len(seqs) == 12 and all(s.complete for s in seqs)


def test_truncated_icosahedron_pentagon_start():
    p = catalog.polyhedron("truncated icosahedron")
    f1 = next(f for f in range(p.n_faces) if p.gon(f) == 5)
    s = peel(p, f1, p.adjacency[f1][0])
    assert s.complete and len(s) == 32
    assert [p.gon(f) for f in s.order[:2]] == [5, 6]


def test_cuboctahedron_never_complete(runs):
    assert not any(s.complete for s in runs("cuboctahedron"))


def test_pair_counts(runs):
    assert len(runs("truncated icosahedron")) == 180
    assert all(s.complete for s in runs("truncated icosahedron"))
    snub = runs("snub cube")
    assert len(snub) == 120
    assert 0 < sum(s.complete for s in snub) < 120


def test_start_pairs_sorted_and_counted():
    p = catalog.polyhedron("rhombicuboctahedron")
    pairs = start_pairs(p)
    assert len(pairs) == 2 * p.n_edges
    assert pairs == sorted(pairs)


def test_non_adjacent_start_rejected():
    p = catalog.polyhedron("cube")
    f2 = next(g for g in range(1, 6) if g not in p.adjacency[0])
    with pytest.raises(NotAdjacentError):
        peel(p, 0, f2)
    with pytest.raises(IndexError):
        peel(p, 0, 99)


@pytest.mark.parametrize("name", ["cuboctahedron", "truncated dodecahedron", "snub cube",
                                  "pentagonal icositetrahedron", "triakis octahedron"])
def test_sequence_invariants(name, runs):
    p = catalog.polyhedron(name)
    for s in runs(name):
        assert len(set(s.order)) == len(s.order)
        for a, b in zip(s.order, s.order[1:]):
            assert b in p.adjacency[a]
        assert (s.outcome is Outcome.COMPLETE) == (len(s) == p.n_faces) == (not s.remaining)
        assert set(s.order) | set(s.remaining) == set(range(p.n_faces))
        if s.outcome is Outcome.ISOLATED:
            chosen = set(s.order)
            assert any(set(p.adjacency[g]) <= chosen for g in s.remaining)
        assert s.steps[0].rule is Rule.START and s.steps[1].rule is Rule.GIVEN


def test_last_face_of_cube_taken_by_only_neighbour_rule():
    p = catalog.polyhedron("cube")
    s = peel(p, 0, p.adjacency[0][0])
    assert s.steps[-1].rule is Rule.ONLY_NEIGHBOR


def test_deterministic():
    p = catalog.polyhedron("snub dodecahedron")
    assert peel(p, 0, p.adjacency[0][1]) == peel(p, 0, p.adjacency[0][1])


@pytest.mark.parametrize("name", ["snub cube", "truncated octahedron", "pentagonal icositetrahedron"])
def test_mirror_law(name):
    p = catalog.polyhedron(name)
    left = peel_all_pairs(p, PeelConfig(handedness="left"))
    right = peel_all_pairs(mirror(p))
    assert [s.order for s in left] == [s.order for s in right]
    assert [s.outcome for s in left] == [s.outcome for s in right]


@settings(max_examples=15, deadline=None)
@given(angle=st.floats(0, 2 * np.pi), pair=st.integers(0, 119),
       tilt=st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 0.1))
def test_rotation_invariance(angle, pair, tilt):
    p = catalog.polyhedron("snub cube")
    f1, f2 = start_pairs(p)[pair]
    axis = np.array(tilt) / np.linalg.norm(tilt)
    for R in (axis_rotation(np.array([0.0, 0.0, 1.0]), angle), axis_rotation(axis, angle)):
        q = p.transformed(R)
        assert peel(q, f1, f2).order == peel(p, f1, f2).order


def test_json_keys():
    p = catalog.polyhedron("cube")
    payload = peel(p, 0, p.adjacency[0][0]).to_json()
    assert list(payload) == ["solid", "f1", "f2", "handedness", "order", "outcome", "remaining"]
    assert json.loads(json.dumps(payload)) == payload


def test_max_steps_stops_early():
    p = catalog.polyhedron("cube")
    s = peel(p, 0, p.adjacency[0][0], PeelConfig(max_steps=4))
    assert len(s) == 4 and not s.complete


def test_on_plane_switch_changes_only_ties():
    p = catalog.polyhedron("rhombic triacontahedron")
    strict = peel_all_pairs(p)
    loose = peel_all_pairs(p, PeelConfig(on_plane="include"))
    assert sum(s.complete for s in strict) == 0
    assert sum(s.complete for s in loose) == len(loose)
