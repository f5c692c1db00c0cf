"""Polyhedron data model, derived combinatorics and rigid motions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

DEFAULT_TOL = 1e-9


class PolyhedronError(ValueError):
    """Raised when raw vertex/face data do not describe a valid polyhedron."""


class ConvexityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Topology:
    """Combinatorial part of a polyhedron, shared between rigid copies.

    ``adjacency[i][k]`` is the face across edge ``k`` of face ``i``, where edge
    ``k`` joins ``faces[i][k]`` and ``faces[i][(k + 1) % len(faces[i])]``.
    """

    n_vertices: int
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    edge_faces: dict
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def shared_edge(self, f: int, g: int) -> int:
        """Index of the edge of face ``f`` shared with face ``g``."""
        try:
            return self.adjacency[f].index(g)
        except ValueError:
            raise PolyhedronError(f"faces {f} and {g} are not adjacent") from None

    def edge_vertices(self, f: int, k: int) -> tuple[int, int]:
        face = self.faces[f]
        return face[k], face[(k + 1) % len(face)]

    def neighbors(self, f: int) -> tuple[int, ...]:
        return self.adjacency[f]


def _topology(n_vertices: int, faces: list[list[int]]) -> Topology:
    directed: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(faces):
        k = len(face)
        for j in range(k):
            a, b = face[j], face[(j + 1) % k]
            if (a, b) in directed:
                raise PolyhedronError(
                    f"directed edge {a}->{b} used by faces {directed[(a, b)]} and {fi}"
                    " (inconsistent orientation or non-manifold edge)"
                )
            directed[(a, b)] = fi

    edge_faces: dict[tuple[int, int], tuple[int, int]] = {}
    for (a, b), fi in directed.items():
        if (b, a) not in directed:
            raise PolyhedronError(f"edge ({a}, {b}) belongs to exactly 1 face")
        if a < b:
            edge_faces[(a, b)] = (fi, directed[(b, a)])

    adjacency = []
    for fi, face in enumerate(faces):
        k = len(face)
        adjacency.append(tuple(directed[(face[(j + 1) % k], face[j])] for j in range(k)))

    return Topology(
        n_vertices=n_vertices,
        faces=tuple(tuple(f) for f in faces),
        edges=tuple(sorted(edge_faces)),
        edge_faces=edge_faces,
        adjacency=tuple(adjacency),
    )


def newell_normal(points: np.ndarray) -> np.ndarray:
    """Area-weighted normal of a (possibly non-planar) polygon."""
    nxt = np.roll(points, -1, axis=0)
    n = np.array(
        [
            np.sum((points[:, 1] - nxt[:, 1]) * (points[:, 2] + nxt[:, 2])),
            np.sum((points[:, 2] - nxt[:, 2]) * (points[:, 0] + nxt[:, 0])),
            np.sum((points[:, 0] - nxt[:, 0]) * (points[:, 1] + nxt[:, 1])),
        ]
    )
    return n


class Polyhedron:
    """Immutable convex polyhedron: vertex coordinates plus oriented faces.

    Faces are stored counter-clockwise when seen from outside. Instances are
    produced by :func:`build`; rigid copies share the same :class:`Topology`.
    """

    __slots__ = ("vertices", "topology", "name", "__dict__")

    def __init__(self, vertices: np.ndarray, topology: Topology, name: str | None = None):
        v = np.array(vertices, dtype=float)
        v.setflags(write=False)
        self.vertices = v
        self.topology = topology
        self.name = name

    def __repr__(self) -> str:
        t = self.topology
        return (
            f"Polyhedron({self.name!r}, m={t.n_vertices}, l={t.n_edges}, n={t.n_faces})"
        )

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return self.topology.faces

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self.topology.adjacency

    @property
    def n_faces(self) -> int:
        return self.topology.n_faces

    @property
    def n_vertices(self) -> int:
        return self.topology.n_vertices

    @property
    def n_edges(self) -> int:
        return self.topology.n_edges

    def gon(self, f: int) -> int:
        return len(self.topology.faces[f])

    @cached_property
    def centroids(self) -> np.ndarray:
        c = np.array([self.vertices[list(f)].mean(axis=0) for f in self.faces])
        c.setflags(write=False)
        return c

    @cached_property
    def center(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @cached_property
    def normals(self) -> np.ndarray:
        out = np.array([newell_normal(self.vertices[list(f)]) for f in self.faces])
        out /= np.linalg.norm(out, axis=1)[:, None]
        out.setflags(write=False)
        return out

    def face_points(self, f: int) -> np.ndarray:
        return self.vertices[list(self.faces[f])]

    def transformed(self, rotation: np.ndarray, translation=None) -> "Polyhedron":
        """Rigid copy ``x -> R x + t`` sharing this polyhedron's topology."""
        v = self.vertices @ np.asarray(rotation).T
        if translation is not None:
            v = v + np.asarray(translation)
        return Polyhedron(v, self.topology, self.name)

    def centered(self) -> "Polyhedron":
        return Polyhedron(self.vertices - self.center, self.topology, self.name)

    def edge_lengths(self, f: int) -> np.ndarray:
        pts = self.face_points(f)
        return np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)


def build(vertices, faces, name: str | None = None, tol: float = DEFAULT_TOL,
          check_convex: bool = True) -> Polyhedron:
    """Validate raw arrays and return a centred, outward-oriented Polyhedron.

    Raises :class:`PolyhedronError` for degenerate faces, bad indices,
    non-manifold edges or an Euler characteristic other than 2. A vertex set
    that is not in convex position only triggers :class:`ConvexityWarning`.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3:
        raise PolyhedronError(f"vertices must have shape (m, 3), got {v.shape}")
    m = len(v)
    if not np.all(np.isfinite(v)):
        raise PolyhedronError("vertex coordinates must be finite")
    v = v - v.mean(axis=0)

    face_lists = []
    for fi, face in enumerate(faces):
        face = [int(i) for i in face]
        if len(face) < 3:
            raise PolyhedronError(f"face {fi} has fewer than 3 vertices")
        if len(set(face)) != len(face):
            raise PolyhedronError(f"face {fi} repeats a vertex index")
        bad = [i for i in face if not 0 <= i < m]
        if bad:
            raise PolyhedronError(f"face {fi} has out-of-range vertex index {bad[0]}")
        pts = v[face]
        normal = newell_normal(pts)
        if np.linalg.norm(normal) <= tol:
            raise PolyhedronError(f"face {fi} is degenerate (zero area)")
        if np.dot(normal, pts.mean(axis=0)) < 0:
            face = face[::-1]
        face_lists.append(face)

    used = {i for f in face_lists for i in f}
    if len(used) != m:
        raise PolyhedronError(f"{m - len(used)} vertices are not used by any face")

    topo = _topology(m, face_lists)
    euler = m - topo.n_edges + topo.n_faces
    if euler != 2:
        raise PolyhedronError(
            f"Euler relation violated: {m} - {topo.n_edges} + {topo.n_faces} = {euler}"
        )
    if not _connected(topo.adjacency):
        raise PolyhedronError("face adjacency graph is not connected")

    p = Polyhedron(v, topo, name)
    if check_convex:
        _warn_if_not_convex(p, tol)
    return p


def _connected(adjacency) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adjacency[f]:
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return len(seen) == len(adjacency)


def _warn_if_not_convex(p: Polyhedron, tol: float) -> None:
    scale = max(1.0, float(np.abs(p.vertices).max()))
    offsets = p.normals @ p.vertices.T - np.einsum("ij,ij->i", p.normals, p.centroids)[:, None]
    worst = float(offsets.max())
    if worst > tol * scale * 1e3:
        warnings.warn(
            f"{p.name or 'polyhedron'}: vertices not in convex position "
            f"(max outside distance {worst:.3g})",
            ConvexityWarning,
            stacklevel=3,
        )


def mirror(p: Polyhedron) -> Polyhedron:
    """Reflect through the x-z plane; face cycles are reversed to stay outward."""
    v = p.vertices * np.array([1.0, -1.0, 1.0])
    faces = [f[::-1] for f in p.faces]
    name = p.name
    return Polyhedron(v, _topology(p.n_vertices, faces), name)


def rotation_to_z(direction: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rotation matrix taking ``direction`` onto the +z axis."""
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if norm <= tol:
        raise PolyhedronError("cannot define an axis from a zero vector")
    u = d / norm
    z = np.array([0.0, 0.0, 1.0])
    c = float(np.dot(u, z))
    axis = np.cross(u, z)
    s = float(np.linalg.norm(axis))
    if s <= 1e-15:
        if c > 0:
            return np.eye(3)
        return np.diag([1.0, -1.0, -1.0])
    axis /= s
    return axis_rotation(axis, np.arctan2(s, c))


def axis_rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix about a unit ``axis``."""
    x, y, z = axis
    K = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)


def rotate_to_top(p: Polyhedron, f1: int, tol: float = DEFAULT_TOL) -> Polyhedron:
    """Rotate a centred polyhedron so the centroid of face ``f1`` sits on +z."""
    return p.transformed(rotation_to_z(p.centroids[f1], tol))


def orthonormalize(R: np.ndarray) -> np.ndarray:
    """Closest proper rotation to ``R`` (polar decomposition)."""
    U, _, Vt = np.linalg.svd(R)
    Q = U @ Vt
    if np.linalg.det(Q) < 0:
        U[:, -1] *= -1
        Q = U @ Vt
    return Q


def congruent(p: Polyhedron, q: Polyhedron, allow_reflection: bool = False,
              tol: float = 1e-6) -> bool:
    """Brute-force rigid congruence test on the vertex sets.

    Every rotation carrying an edge frame of ``p`` onto an edge frame of ``q``
    is tried; with ``allow_reflection`` improper frames are tried as well.
    """
    if p.n_vertices != q.n_vertices or p.n_faces != q.n_faces:
        return False
    P = p.vertices - p.center
    Q = q.vertices - q.center
    tree = cKDTree(Q)

    def frame(a, b):
        e1 = a / np.linalg.norm(a)
        e2 = b - np.dot(b, e1) * e1
        e2 /= np.linalg.norm(e2)
        return np.column_stack([e1, e2, np.cross(e1, e2)])

    a0 = p.faces[0][0]
    a1 = p.faces[0][1]
    if np.linalg.norm(np.cross(P[a0], P[a1])) <= tol:
        return False
    src = frame(P[a0], P[a1])
    target_len = np.linalg.norm(P[a1] - P[a0])
    r0 = np.linalg.norm(P[a0])
    for (a, b) in q.topology.edges:
        for (i, j) in ((a, b), (b, a)):
            if abs(np.linalg.norm(Q[i]) - r0) > tol:
                continue
            if abs(np.linalg.norm(Q[j] - Q[i]) - target_len) > tol:
                continue
            dst = frame(Q[i], Q[j])
            candidates = [dst @ src.T]
            if allow_reflection:
                flip = np.diag([1.0, 1.0, -1.0])
                candidates.append(dst @ flip @ src.T)
            for R in candidates:
                dist, _ = tree.query(P @ R.T)
                if dist.max() <= tol:
                    return True
    return False
