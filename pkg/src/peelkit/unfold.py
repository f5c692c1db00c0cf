"""Flatten peel sequences into planar nets and intermediate 3D states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import shapely

from . import _svg
from .geometry import Polyhedron, axis_rotation, orthonormalize, rotation_to_z
from .peeling import Outcome, PeelSequence

LIGHT_START, LIGHT_END = 0.25, 0.90


class UnfoldError(ValueError):
    """The hinge chain cannot be followed (bad sequence or collapsed edge)."""


@dataclass(frozen=True)
class Net:
    """Planar net, one polygon per face in peel order.

    ``polygons[j]`` lists the vertices of face ``order[j]`` in the stored
    cycle, so polygon edges line up with 3D edges. ``hinges[j]`` is the
    vertex pair shared with the predecessor (``None`` for the first face).
    The inside of the solid faces the viewer (+z).
    """

    solid: str | None
    order: tuple[int, ...]
    polygons: tuple[np.ndarray, ...]
    hinges: tuple[tuple[int, int] | None, ...]
    vertex_ids: tuple[tuple[int, ...], ...]
    outcome: Outcome

    def __len__(self) -> int:
        return len(self.order)

    @property
    def lightness(self) -> np.ndarray:
        """Gray level per face, dark at the start, light at the goal."""
        t = len(self.order)
        if t == 1:
            return np.array([LIGHT_START])
        return np.linspace(LIGHT_START, LIGHT_END, t)

    def area(self) -> float:
        return float(sum(polygon_area(poly) for poly in self.polygons))

    def hinge_points(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Hinge endpoints as placed on face ``j`` and on face ``j - 1``."""
        a, b = self.hinges[j]
        here = self.polygons[j][[self.vertex_ids[j].index(a), self.vertex_ids[j].index(b)]]
        prev = self.polygons[j - 1][[self.vertex_ids[j - 1].index(a), self.vertex_ids[j - 1].index(b)]]
        return here, prev

    def to_svg(self) -> str:
        canvas = _svg.Canvas(np.vstack(self.polygons))
        g = canvas.add("g", stroke="#000000", stroke_width="0.8", stroke_linejoin="round")
        for step, (f, poly, light) in enumerate(zip(self.order, self.polygons, self.lightness), start=1):
            canvas.add("polygon", g, points=canvas.points_attr(poly), fill=_svg.gray(light),
                       data_face=f, data_step=step, data_gon=len(poly))
        return canvas.tostring()


@dataclass(frozen=True)
class PartialUnfoldState:
    """3D snapshot after ``step`` faces have been peeled off and laid flat.

    Faces ``order[:step]`` lie in the plane of ``order[step - 1]``, which
    itself stays in place; every other face keeps its coordinates.
    """

    solid: str | None
    step: int
    faces: tuple[tuple[int, ...], ...]
    coords: tuple[np.ndarray, ...]
    roles: tuple[str, ...]

    def to_obj(self) -> str:
        out = [f"# peelkit {_svg.__version__} intermediate state",
               f"# solid {self.solid}", f"# step {self.step}"]
        base = 1
        for f, (pts, role) in enumerate(zip(self.coords, self.roles)):
            out.append(f"g face{f}")
            out.append(f"# face {f} role {role}")
            verts = np.vstack([pts.mean(axis=0), pts])
            out += [f"v {x:.9f} {y:.9f} {z:.9f}" for x, y, z in verts]
            k = len(pts)
            for j in range(k):
                out.append(f"f {base} {base + 1 + j} {base + 1 + (j + 1) % k}")
            base += k + 1
        return "\n".join(out) + "\n"


def polygon_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _hinge_transforms(p: Polyhedron, order, tol: float = 1e-12):
    """Rigid maps (R, t) laying every face of ``order`` into the plane of the first.

    Each map is the predecessor's composed with a rotation about the shared
    hinge that turns this face's normal onto the predecessor's.
    """
    topo = p.topology
    V = p.vertices
    normals = p.normals
    Rs = [np.eye(3)]
    ts = [np.zeros(3)]
    hinges = [None]
    for j in range(1, len(order)):
        prev, f = order[j - 1], order[j]
        if f not in topo.adjacency[prev]:
            raise UnfoldError(f"faces {prev} and {f} are not adjacent")
        a, b = topo.edge_vertices(f, topo.shared_edge(f, prev))
        axis = V[b] - V[a]
        length = np.linalg.norm(axis)
        if length <= tol:
            raise UnfoldError(f"hinge between faces {prev} and {f} has zero length")
        axis = axis / length
        n_f, n_p = normals[f], normals[prev]
        angle = np.arctan2(np.dot(axis, np.cross(n_f, n_p)), np.dot(n_f, n_p))
        H = axis_rotation(axis, angle)
        # x -> R_prev (a + H (x - a)) + t_prev
        R = orthonormalize(Rs[-1] @ H)
        t = Rs[-1] @ (V[a] - H @ V[a]) + ts[-1]
        Rs.append(R)
        ts.append(t)
        hinges.append((a, b))
    return Rs, ts, hinges


def unfold(p: Polyhedron, seq: PeelSequence) -> Net:
    """Lay the selected faces of ``seq`` out in the plane z = 0."""
    order = tuple(seq.order)
    if not order:
        raise UnfoldError("empty sequence")
    Rs, ts, hinges = _hinge_transforms(p, order)
    f1 = order[0]
    # F1's outward normal goes to -z so the inside faces the viewer
    R0 = rotation_to_z(-p.normals[f1])
    c0 = R0 @ p.centroids[f1]
    polys = []
    for f, R, t in zip(order, Rs, ts):
        pts = (p.face_points(f) @ R.T + t) @ R0.T - c0
        polys.append(pts[:, :2].copy())
    return Net(p.name, order, tuple(polys), tuple(hinges),
               tuple(p.faces[f] for f in order), seq.outcome)


def partial_unfold(p: Polyhedron, seq: PeelSequence, i: int) -> PartialUnfoldState:
    """Intermediate state after peeling ``i`` faces.

    ``1 <= i <= len(seq)``; ``i = len(seq)`` gives the full net lying in the
    plane of the last face.
    """
    order = tuple(seq.order)
    if not 1 <= i <= len(order):
        raise IndexError(f"step {i} out of range 1..{len(order)}")
    Rs, ts, _ = _hinge_transforms(p, order[:i])
    # pull the sheet back so face order[i-1] returns to its own place
    Ri, ti = Rs[-1], ts[-1]
    Rinv = Ri.T
    coords = [p.face_points(f).copy() for f in range(p.n_faces)]
    roles = ["not-unfolded"] * p.n_faces
    for j, f in enumerate(order[:i]):
        if j < i - 1:
            coords[f] = ((p.face_points(f) @ Rs[j].T + ts[j]) - ti) @ Rinv.T
            roles[f] = "unfolded"
        else:
            roles[f] = "last-selected"
    return PartialUnfoldState(p.name, i, p.faces, tuple(coords), tuple(roles))


def check_overlap(net: Net, tol: float = 1e-9) -> list[tuple[int, int]]:
    """Pairs of net positions ``(j, k)``, ``j < k``, whose interiors overlap.

    Polygons that only touch along edges or at corners have zero
    intersection area and are not reported.
    """
    shapes = [shapely.Polygon(poly) for poly in net.polygons]
    tree = shapely.STRtree(shapes)
    # snap-rounded overlay; floating overlay misreads edges shared to 1e-16
    grid = tol * max(1.0, float(np.abs(np.vstack(net.polygons)).max()))
    pairs = []
    for j, k in zip(*tree.query(shapes, predicate="intersects")):
        if j < k:
            area = shapely.intersection(shapes[j], shapes[k], grid_size=grid).area
            scale = min(shapes[j].area, shapes[k].area)
            if area > tol * max(scale, 1.0):
                pairs.append((int(j), int(k)))
    return sorted(pairs)
