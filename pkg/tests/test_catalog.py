import json

import numpy as np
import pytest

from peelkit import catalog
from peelkit.geometry import congruent

COUNTS = {
    # name: (vertices, edges, faces)
    "tetrahedron": (4, 6, 4), "cube": (8, 12, 6), "octahedron": (6, 12, 8),
    "dodecahedron": (20, 30, 12), "icosahedron": (12, 30, 20),
    "truncated tetrahedron": (12, 18, 8), "cuboctahedron": (12, 24, 14),
    "truncated cube": (24, 36, 14), "truncated octahedron": (24, 36, 14),
    "rhombicuboctahedron": (24, 48, 26), "truncated cuboctahedron": (48, 72, 26),
    "snub cube": (24, 60, 38), "icosidodecahedron": (30, 60, 32),
    "truncated dodecahedron": (60, 90, 32), "truncated icosahedron": (60, 90, 32),
    "rhombicosidodecahedron": (60, 120, 62), "truncated icosidodecahedron": (120, 180, 62),
    "snub dodecahedron": (60, 150, 92),
}

TETRA_OFF = """OFF
# a comment
4 4 6
1 1 1
1 -1 -1
-1 1 -1
-1 -1 1
3 0 1 2
3 0 3 1
3 0 2 3
3 1 3 2
"""


def test_catalog_size():
    assert len(catalog.names()) == 31
    assert [len(catalog.names(f)) for f in catalog.FAMILIES] == [5, 13, 13]


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_counts(name):
    rec = catalog.lookup(name)
    assert rec.counts == COUNTS[name]
    dual = catalog.lookup(rec.dual)
    m, l, n = rec.counts
    assert dual.counts == (n, l, m)


def test_lookup_by_index():
    assert catalog.lookup("{5,6,6}").name == "truncated icosahedron"
    assert catalog.lookup("[5,6,6]").name == "pentakis dodecahedron"
    assert catalog.lookup("{5, 6, 6}").polyhedron.n_faces == 32
    snub = catalog.lookup("{3,3,3,3,4}")
    assert snub.name == "snub cube" and snub.chiral
    assert catalog.lookup("Great Rhombicuboctahedron").name == "truncated cuboctahedron"


def test_unknown_solid():
    with pytest.raises(catalog.UnknownSolidError):
        catalog.lookup("great dodecahedron")


def test_archimedean_edge_length_one():
    for rec in catalog.records("Archimedean"):
        p = rec.polyhedron
        lengths = np.concatenate([p.edge_lengths(f) for f in range(p.n_faces)])
        assert np.abs(lengths - 1).max() < 1e-9, rec.name


def test_verify_catalog_all_pass():
    report = catalog.verify_catalog()
    assert len(report) == 31
    failed = [(r.name, r.checks) for r in report if not r.ok]
    assert not failed


def test_vertex_configuration_and_index():
    p = catalog.polyhedron("rhombicuboctahedron")
    assert catalog.vertex_configuration(p, 0) == (3, 4, 4, 4)
    assert catalog.format_index((3, 4, 4, 4), "Catalan") == "[3,4,4,4]"


def test_chiral_flags():
    chiral = {r.name for r in catalog.records() if r.chiral}
    assert chiral == {"snub cube", "snub dodecahedron",
                      "pentagonal icositetrahedron", "pentagonal hexecontahedron"}


def test_ingest_off_tetrahedron():
    p = catalog.ingest_off(TETRA_OFF)
    assert (p.n_vertices, p.n_edges, p.n_faces) == (4, 6, 4)


def test_off_counts_on_header_line():
    text = TETRA_OFF.replace("OFF\n# a comment\n4 4 6\n", "OFF 4 4 6\n")
    assert catalog.ingest_off(text).n_faces == 4


def test_off_count_mismatch_names_line():
    text = TETRA_OFF.replace("4 4 6", "4 3 6")
    with pytest.raises(catalog.OFFParseError) as err:
        catalog.ingest_off(text)
    assert err.value.line == 11
    assert "line 11" in str(err.value)


def test_off_short_body():
    text = TETRA_OFF.replace("4 4 6", "4 5 6")
    with pytest.raises(catalog.OFFParseError, match="line 11"):
        catalog.ingest_off(text)


@pytest.mark.parametrize("bad,needle", [
    ("OFX\n", "header"),
    ("OFF\nfour 4\n", "counts"),
])
def test_off_header_errors(bad, needle):
    with pytest.raises(catalog.OFFParseError, match=needle):
        catalog.ingest_off(bad)


def test_off_face_length_mismatch():
    text = TETRA_OFF.replace("3 1 3 2", "4 1 3 2")
    with pytest.raises(catalog.OFFParseError, match="line 11"):
        catalog.ingest_off(text)


@pytest.mark.parametrize("name", ["cube", "snub cube", "deltoidal hexecontahedron"])
def test_off_round_trip(name):
    p = catalog.polyhedron(name)
    q = catalog.ingest_off(catalog.to_off(p))
    assert q.faces == p.faces
    assert congruent(p, q, tol=1e-9)


def test_json_round_trip(tmp_path):
    p = catalog.polyhedron("truncated octahedron")
    text = catalog.to_json(p)
    assert set(json.loads(text)) == {"vertices", "faces", "name"}
    path = tmp_path / "solid.json"
    path.write_text(text)
    q = catalog.load(str(path))
    assert q.name == "truncated octahedron"
    assert np.allclose(q.vertices, p.vertices)


def test_load_off_file_uses_stem(tmp_path):
    path = tmp_path / "tet.off"
    path.write_text(TETRA_OFF)
    assert catalog.load(str(path)).name == "tet"
