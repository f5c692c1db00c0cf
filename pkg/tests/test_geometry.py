import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peelkit import catalog
from peelkit.geometry import (ConvexityWarning, PolyhedronError, build, congruent, mirror,
                              orthonormalize, rotate_to_top, rotation_to_z)

TETRA_V = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
TETRA_F = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]
CUBE_V = [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
CUBE_F = [[0, 1, 3, 2], [4, 6, 7, 5], [0, 4, 5, 1], [2, 3, 7, 6], [0, 2, 6, 4], [1, 5, 7, 3]]


def pairwise(v):
    return np.linalg.norm(v[:, None] - v[None], axis=-1)


def test_tetrahedron_counts():
    p = build(TETRA_V, TETRA_F)
    assert (p.n_vertices, p.n_edges, p.n_faces) == (4, 6, 4)


def test_faces_reoriented_outward():
    flipped = [f[::-1] for f in CUBE_F]
    p = build(CUBE_V, flipped)
    assert np.all(np.einsum("ij,ij->i", p.normals, p.centroids) > 0)


def test_open_cube_rejected():
    with pytest.raises(PolyhedronError, match="1 face"):
        build(CUBE_V, CUBE_F[:-1])


@pytest.mark.parametrize("faces,msg", [
    ([[0, 1]] + TETRA_F[1:], "fewer than 3"),
    ([[0, 1, 9]] + TETRA_F[1:], "out-of-range"),
    ([[0, 1, 1]] + TETRA_F[1:], "repeats"),
])
def test_bad_faces(faces, msg):
    with pytest.raises(PolyhedronError, match=msg):
        build(TETRA_V, faces)


def test_degenerate_face():
    v = [[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0]]
    with pytest.raises(PolyhedronError, match="degenerate"):
        build(v, [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])


def test_non_convex_only_warns():
    v = np.array(CUBE_V, float)
    v[7] *= 0.5  # dent one corner
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = build(v, CUBE_F)
    assert any(issubclass(w.category, ConvexityWarning) for w in caught)
    assert p.n_faces == 6


def test_build_centers_at_origin():
    p = build(np.array(CUBE_V, float) + [3.0, -2.0, 5.0], CUBE_F)
    assert np.abs(p.center).max() < 1e-12


def test_adjacency_symmetric_and_sized():
    for rec in catalog.records():
        p = rec.polyhedron
        for f, nb in enumerate(p.adjacency):
            assert len(nb) == p.gon(f)
            assert all(f in p.adjacency[g] for g in nb)


def test_centroids_on_face_planes():
    for rec in catalog.records():
        p = rec.polyhedron
        for f in range(p.n_faces):
            d = (p.face_points(f) - p.centroids[f]) @ p.normals[f]
            assert np.abs(d).max() < 1e-9


def test_mirror_involution():
    p = catalog.polyhedron("snub cube")
    assert np.allclose(mirror(mirror(p)).vertices, p.vertices)
    assert mirror(mirror(p)).faces == p.faces


def test_mirror_congruence():
    cube = catalog.polyhedron("cube")
    snub = catalog.polyhedron("snub cube")
    assert congruent(mirror(cube), cube)
    assert not congruent(mirror(snub), snub)
    assert congruent(mirror(snub), snub, allow_reflection=True)


def test_rotate_to_top_identity_and_antipode():
    p = build(CUBE_V, CUBE_F)
    top = int(np.argmax(p.centroids[:, 2]))
    assert np.allclose(rotation_to_z(p.centroids[top]), np.eye(3))
    bottom = int(np.argmin(p.centroids[:, 2]))
    q = rotate_to_top(p, bottom)
    assert q.centroids[bottom, 2] > 0
    assert np.allclose(q.centroids[bottom, :2], 0)


def test_rotate_to_top_hexagon():
    p = catalog.polyhedron("truncated icosahedron")
    hexagon = next(f for f in range(p.n_faces) if p.gon(f) == 6)
    q = rotate_to_top(p, hexagon)
    assert np.abs(q.centroids[hexagon, :2]).max() < 1e-12
    assert np.abs(pairwise(q.vertices) - pairwise(p.vertices)).max() < 1e-9


def test_zero_axis_rejected():
    with pytest.raises(PolyhedronError):
        rotation_to_z(np.zeros(3))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(lambda d: np.linalg.norm(d) > 1e-3))
def test_rotation_to_z_is_proper(d):
    R = rotation_to_z(np.array(d))
    assert np.allclose(R @ R.T, np.eye(3), atol=1e-12)
    assert np.isclose(np.linalg.det(R), 1.0)
    u = R @ np.array(d)
    assert np.allclose(u / np.linalg.norm(u), [0, 0, 1], atol=1e-12)


def test_orthonormalize_repairs_drift():
    R = rotation_to_z(np.array([1.0, 2.0, 3.0])) + 1e-6
    Q = orthonormalize(R)
    assert np.allclose(Q @ Q.T, np.eye(3), atol=1e-14)
    assert np.isclose(np.linalg.det(Q), 1.0)
