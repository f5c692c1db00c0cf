import random

import numpy as np
import pytest

from peelkit import catalog, classify
from peelkit.classify import Verdict, verdict_from_counts
from peelkit.geometry import axis_rotation, mirror
from peelkit.peeling import PeelConfig


def test_verdict_from_counts():
    assert verdict_from_counts(4, 4) is Verdict.PERFECT
    assert verdict_from_counts(0, 4) is Verdict.IMPOSSIBLE
    assert verdict_from_counts(1, 4) is Verdict.POSSIBLE


@pytest.mark.parametrize("name,verdict", [
    ("dodecahedron", Verdict.PERFECT),
    ("{3,3,3,3,5}", Verdict.IMPOSSIBLE),
    ("[4,6,6]", Verdict.POSSIBLE),
    ("cube", Verdict.PERFECT),
])
def test_classify_examples(name, verdict):
    assert classify.classify(catalog.polyhedron(name)).verdict is verdict


def test_expected_tables_cover_catalog():
    exp = classify.expected_verdicts()
    assert set(exp) == set(catalog.names())
    ham = classify.expected_hamiltonian()
    assert sum(ham[n] for n in catalog.names("Catalan")) == 7


@pytest.mark.parametrize("name,count", [
    ("truncated icosahedron", 3),
    ("pentakis dodecahedron", 3),
    ("cube", 1),
])
def test_complete_pattern_class_counts(name, count, runs):
    p = catalog.polyhedron(name)
    classes = classify.pattern_classes(p, [r for r in runs(name) if r.complete])
    assert len(classes) == count


def test_truncated_icosahedron_first_pentagon_positions(runs):
    p = catalog.polyhedron("truncated icosahedron")
    classes = classify.pattern_classes(p, runs("truncated icosahedron"))
    assert sorted(c.signature.position_of(5) for c in classes) == [1, 2, 3]


def test_signature_length_and_turns(runs):
    p = catalog.polyhedron("snub cube")
    for r in runs("snub cube")[:20]:
        sig = classify.signature(p, r)
        assert len(sig) == len(r)
        assert sig.turns[0] is None and sig.turns[-1] is None
        assert all(0 < t < p.gon(f) for t, f in zip(sig.turns[1:-1], r.order[1:-1]))


def test_pattern_classes_permutation_invariant(runs):
    p = catalog.polyhedron("snub cube")
    seqs = list(runs("snub cube"))
    shuffled = seqs[:]
    random.Random(3).shuffle(shuffled)
    a = [(c.signature, c.count) for c in classify.pattern_classes(p, seqs)]
    b = [(c.signature, c.count) for c in classify.pattern_classes(p, shuffled)]
    assert a == b


def _aligned_points(p, net):
    """Net vertices with every polygon rotated to start at its entry hinge."""
    topo = p.topology
    order = net.order
    pts = []
    for j, (f, poly) in enumerate(zip(order, net.polygons)):
        k = topo.shared_edge(f, order[j - 1] if j else order[1])
        pts.append(np.roll(poly, -k, axis=0))
    return np.vstack(pts)


@pytest.mark.parametrize("name", ["pentakis dodecahedron", "snub cube", "tetrakis hexahedron"])
def test_equal_signatures_give_congruent_nets(name, runs):
    from peelkit.unfold import unfold

    p = catalog.polyhedron(name)
    seqs = runs(name)
    for cls in classify.pattern_classes(p, seqs):
        members = [r for r in seqs if classify.signature(p, r) == cls.signature][:4]
        clouds = [_aligned_points(p, unfold(p, r)) for r in members]
        d_ref = np.linalg.norm(clouds[0][:, None] - clouds[0][None], axis=-1)
        for pts in clouds[1:]:
            d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
            assert np.abs(d - d_ref).max() < 1e-9


def test_failure_classes_truncated_dodecahedron(runs):
    p = catalog.polyhedron("truncated dodecahedron")
    fails = classify.failure_classes(p, runs("truncated dodecahedron"))
    assert sum(fails.values()) == len(runs("truncated dodecahedron"))
    assert len(fails) == 3


def test_verdict_rotation_invariant():
    p = catalog.polyhedron("truncated tetrahedron")
    R = axis_rotation(np.array([0.6, 0.0, 0.8]), 1.234)
    a = classify.classify(p)
    b = classify.classify(p.transformed(R))
    assert (a.verdict, a.complete) == (b.verdict, b.complete)


@pytest.mark.parametrize("name", ["snub cube", "truncated octahedron", "[4,6,6]"])
def test_left_on_p_equals_right_on_mirror(name):
    p = catalog.polyhedron(name)
    a = classify.classify(p, PeelConfig(handedness="left"))
    b = classify.classify(mirror(p))
    assert a.complete == b.complete


@pytest.mark.parametrize("name", ["truncated octahedron", "truncated tetrahedron", "[3,6,6]"])
def test_achiral_handedness_symmetric(name):
    p = catalog.polyhedron(name)
    assert classify.classify(p).complete == classify.classify(p, PeelConfig(handedness="left")).complete


def test_table_output_formats():
    rows = classify.classify_catalog(solids=["cube", "cuboctahedron"])
    csv_text = classify.rows_to_csv(rows)
    assert csv_text.splitlines()[0] == ",".join(classify.COLUMNS)
    assert csv_text.splitlines()[1] == "cube,\"{4,4,4}\",Platonic,Perfect,24,24"
    assert classify.rows_to_json(rows) == classify.rows_to_json(classify.classify_catalog(
        solids=["cube", "cuboctahedron"]))
    assert all(r.matches for r in rows)
