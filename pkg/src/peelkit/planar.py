"""Tutte drawings of polyhedral graphs with the peel trace overlaid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _svg
from .geometry import DEFAULT_TOL, Polyhedron, rotation_to_z
from .peeling import PeelSequence


class EmbeddingError(ArithmeticError):
    """The barycentric system could not be solved."""


@dataclass(frozen=True)
class PlanarEmbedding:
    """Straight-line drawing of the skeleton.

    The outer face is the start face drawn at its true shape; every other
    vertex sits at the mean of its neighbours. ``trace`` holds one point per
    peeled face (the start face at the origin, the others at the mean of
    their drawn vertices).
    """

    solid: str | None
    positions: np.ndarray
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    outer: tuple[int, ...]
    order: tuple[int, ...]
    trace: np.ndarray
    remaining: frozenset[int]

    @property
    def interior(self) -> list[int]:
        fixed = set(self.outer)
        return [v for v in range(len(self.positions)) if v not in fixed]

    def face_polygon(self, f: int) -> np.ndarray:
        return self.positions[list(self.faces[f])]

    def barycentric_residual(self) -> float:
        nbrs: list[list[int]] = [[] for _ in self.positions]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        worst = 0.0
        for v in self.interior:
            mean = self.positions[nbrs[v]].mean(axis=0)
            worst = max(worst, float(np.linalg.norm(self.positions[v] - mean)))
        return worst

    def crossings(self, tol: float = DEFAULT_TOL) -> list[tuple[int, int]]:
        """Index pairs of edges that meet anywhere except a shared endpoint."""
        return segment_crossings(self.positions, self.edges, tol)

    def to_svg(self) -> str:
        canvas = _svg.Canvas(self.positions)
        faces = canvas.add("g", stroke="none")
        for f in sorted(self.remaining):
            if set(self.faces[f]) == set(self.outer):
                continue
            canvas.add("polygon", faces, points=canvas.points_attr(self.face_polygon(f)),
                       fill="#e03020", data_face=f, data_role="remaining")
        edges = canvas.add("g", stroke="#000000", stroke_width="1")
        for a, b in self.edges:
            (x1, y1), (x2, y2) = canvas.xy(self.positions[a]), canvas.xy(self.positions[b])
            canvas.add("line", edges, x1=f"{x1:.3f}", y1=f"{y1:.3f}", x2=f"{x2:.3f}", y2=f"{y2:.3f}",
                       data_edge=f"{a}-{b}")
        canvas.add("polyline", points=canvas.points_attr(self.trace), fill="none",
                   stroke="#1060d0", stroke_width="2", data_faces=" ".join(map(str, self.order)))
        marks = canvas.add("g", fill="#1060d0")
        for step, (f, pt) in enumerate(zip(self.order, self.trace), start=1):
            x, y = canvas.xy(pt)
            canvas.add("circle", marks, cx=f"{x:.3f}", cy=f"{y:.3f}", r="2.5", data_face=f, data_step=step)
        return canvas.tostring()


def embed(p: Polyhedron, seq: PeelSequence) -> PlanarEmbedding:
    f1, order = seq.order[0], tuple(seq.order)
    outer = p.faces[f1]
    m = p.n_vertices
    pos = np.zeros((m, 2))
    # F1 laid flat along its own normal keeps its true shape even when the
    # normal and the centroid direction differ (kites, irregular inputs)
    flat = (p.face_points(f1) - p.centroids[f1]) @ rotation_to_z(p.normals[f1]).T
    pos[list(outer)] = flat[:, :2]

    nbrs: list[set[int]] = [set() for _ in range(m)]
    for a, b in p.topology.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    fixed = set(outer)
    interior = [v for v in range(m) if v not in fixed]
    if interior:
        col = {v: i for i, v in enumerate(interior)}
        A = np.zeros((len(interior), len(interior)))
        rhs = np.zeros((len(interior), 2))
        for v in interior:
            i = col[v]
            A[i, i] = len(nbrs[v])
            for w in nbrs[v]:
                if w in fixed:
                    rhs[i] += pos[w]
                else:
                    A[i, col[w]] -= 1.0
        try:
            pos[interior] = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError as exc:
            raise EmbeddingError(f"barycentric system is singular: {exc}") from None

    # F2's drawn centroid onto +y
    c2 = pos[list(p.faces[order[1]])].mean(axis=0) if len(order) > 1 else np.array([0.0, 1.0])
    theta = np.pi / 2 - np.arctan2(c2[1], c2[0])
    c, s = np.cos(theta), np.sin(theta)
    pos = pos @ np.array([[c, s], [-s, c]])

    trace = np.array([[0.0, 0.0]] + [pos[list(p.faces[f])].mean(axis=0) for f in order[1:]])
    return PlanarEmbedding(p.name, pos, tuple(p.topology.edges), p.faces, outer, order, trace,
                           frozenset(seq.remaining))


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def segment_crossings(pos: np.ndarray, edges, tol: float = DEFAULT_TOL) -> list[tuple[int, int]]:
    """All pairs of edges that intersect other than at a common endpoint.

    Orientation tests use ``tol`` scaled by the drawing size, so touching
    and collinear overlaps count as crossings.
    """
    E = np.asarray(edges)
    P, Q = pos[E[:, 0]], pos[E[:, 1]]
    scale = max(float(np.ptp(pos, axis=0).max()), 1.0) ** 2
    eps = tol * scale
    i, j = np.triu_indices(len(E), k=1)
    share = (E[i, 0] == E[j, 0]) | (E[i, 0] == E[j, 1]) | (E[i, 1] == E[j, 0]) | (E[i, 1] == E[j, 1])
    d1 = _orient(P[i], Q[i], P[j])
    d2 = _orient(P[i], Q[i], Q[j])
    d3 = _orient(P[j], Q[j], P[i])
    d4 = _orient(P[j], Q[j], Q[i])
    separated = ((d1 > eps) & (d2 > eps)) | ((d1 < -eps) & (d2 < -eps)) | \
                ((d3 > eps) & (d4 > eps)) | ((d3 < -eps) & (d4 < -eps))
    collinear = (np.abs(d1) <= eps) & (np.abs(d2) <= eps)
    hit = ~separated & ~share & ~collinear
    if collinear.any():
        # overlap of the projections onto edge i, in units of |edge i|^2
        d = Q[i] - P[i]
        t1 = np.einsum("ij,ij->i", P[j] - P[i], d)
        t2 = np.einsum("ij,ij->i", Q[j] - P[i], d)
        dd = np.einsum("ij,ij->i", d, d)
        overlap = np.minimum(np.maximum(t1, t2), dd) - np.maximum(np.minimum(t1, t2), 0.0)
        hit |= collinear & np.where(share, overlap > eps, overlap >= -eps)
    return [(int(a), int(b)) for a, b in zip(i[hit], j[hit])]


def faces_simple(emb: PlanarEmbedding, tol: float = DEFAULT_TOL) -> bool:
    """Every face is drawn as a simple polygon with nonzero area."""
    for f, face in enumerate(emb.faces):
        poly = emb.face_polygon(f)
        x, y = poly[:, 0], poly[:, 1]
        if abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) <= tol:
            return False
        k = len(face)
        local = [(face[j], face[(j + 1) % k]) for j in range(k)]
        if segment_crossings(emb.positions, local, tol):
            return False
    return True
