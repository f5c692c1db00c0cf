"""Regenerate src/peelkit/data/solids.json from closed-form coordinates.

Run once; the package reads the JSON at runtime and never recomputes it.

    python tools/generate_catalog.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import ConvexHull

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from peelkit.geometry import axis_rotation, build, mirror  # noqa: E402
from peelkit.peeling import PeelConfig, peel  # noqa: E402

PHI = (1 + 5 ** 0.5) / 2
OUT = ROOT / "src" / "peelkit" / "data" / "solids.json"


def signed(base, parity=None):
    """All sign choices of ``base``; ``parity`` restricts the count of minus signs."""
    out = set()
    for signs in itertools.product((1, -1), repeat=3):
        if parity is not None and signs.count(-1) % 2 != parity:
            continue
        out.add(tuple(s * b for s, b in zip(signs, base)))
    return out


def all_perms(points):
    return {q for p in points for q in itertools.permutations(p)}


def even_perms(points):
    out = set()
    for x, y, z in points:
        out |= {(x, y, z), (y, z, x), (z, x, y)}
    return out


def dedupe(points, tol=1e-9):
    pts = []
    for p in sorted(points):
        if all(np.linalg.norm(np.subtract(p, q)) > tol for q in pts):
            pts.append(p)
    return np.array(pts, dtype=float)


def hull_faces(points, tol=1e-7):
    """Group hull triangles into planar faces, each ordered CCW from outside."""
    hull = ConvexHull(points)
    groups: dict[int, set] = {}
    planes = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        for gi, q in enumerate(planes):
            if np.allclose(q, eq, atol=tol):
                groups[gi].update(simplex.tolist())
                break
        else:
            planes.append(eq)
            groups[len(planes) - 1] = set(simplex.tolist())
    faces = []
    for gi, idx in groups.items():
        normal = planes[gi][:3]
        idx = sorted(idx)
        c = points[idx].mean(axis=0)
        u = points[idx[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        ang = [np.arctan2(np.dot(points[i] - c, w), np.dot(points[i] - c, u)) for i in idx]
        faces.append([idx[k] for k in np.argsort(ang)])
    return faces


def rotation_group(generators):
    elems = [np.eye(3)]
    keys = {tuple(np.round(np.eye(3), 6).ravel())}
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                m = h @ g
                k = tuple(np.round(m, 6).ravel())
                if k not in keys:
                    keys.add(k)
                    elems.append(m)
                    nxt.append(m)
        frontier = nxt
    return elems


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def snub(group, big_axis, tri_axis, two_axis, big_order):
    """Snub solid as the orbit of one point under a rotation group.

    The seed ``p`` is chosen so that the three edge types (around the big
    face, around the 3-fold face, across the 2-fold axis) have equal length.
    """
    Rb = axis_rotation(unit(big_axis), 2 * np.pi / big_order)
    R3 = axis_rotation(unit(tri_axis), 2 * np.pi / 3)
    R2 = axis_rotation(unit(two_axis), np.pi)

    def resid(x):
        p = unit(x)
        a = np.linalg.norm(p - Rb @ p)
        b = np.linalg.norm(p - R3 @ p)
        c = np.linalg.norm(p - R2 @ p)
        return [a - b, a - c, np.linalg.norm(x) - 1]

    n_big = len(group) // big_order
    start = unit(unit(big_axis) + unit(tri_axis) + unit(two_axis))
    rng = np.random.default_rng(0)
    for _ in range(200):
        x0 = start + rng.normal(scale=0.2, size=3)
        sol = least_squares(resid, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.max(np.abs(sol.fun)) > 1e-12:
            continue
        p = unit(sol.x)
        pts = dedupe([tuple(g @ p) for g in group])
        if len(pts) != len(group):
            continue
        faces = hull_faces(pts)
        counts = [len(f) for f in faces]
        if counts.count(big_order) != n_big or counts.count(3) != len(faces) - n_big:
            continue
        lengths = [np.linalg.norm(pts[f[i]] - pts[f[i - 1]]) for f in faces for i in range(len(f))]
        if np.ptp(lengths) > 1e-9 * np.mean(lengths):
            continue
        return pts
    raise RuntimeError("snub construction did not converge")


def archimedean_points():
    s2 = 2 ** 0.5
    xi = s2 - 1
    pts = {}
    pts["truncated tetrahedron"] = all_perms(signed((3, 1, 1), parity=0))
    pts["cuboctahedron"] = all_perms(signed((1, 1, 0)))
    pts["truncated cube"] = all_perms(signed((xi, 1, 1)))
    pts["truncated octahedron"] = all_perms(signed((0, 1, 2)))
    pts["rhombicuboctahedron"] = all_perms(signed((1, 1, 1 + s2)))
    pts["truncated cuboctahedron"] = all_perms(signed((1, 1 + s2, 1 + 2 * s2)))
    pts["icosidodecahedron"] = all_perms(signed((0, 0, PHI))) | even_perms(
        signed((0.5, PHI / 2, PHI ** 2 / 2))
    )
    pts["truncated dodecahedron"] = even_perms(
        signed((0, 1 / PHI, 2 + PHI)) | signed((1 / PHI, PHI, 2 * PHI)) | signed((PHI, 2, PHI + 1))
    )
    pts["truncated icosahedron"] = even_perms(
        signed((0, 1, 3 * PHI)) | signed((1, 2 + PHI, 2 * PHI)) | signed((PHI, 2, PHI ** 3))
    )
    pts["rhombicosidodecahedron"] = even_perms(
        signed((1, 1, PHI ** 3)) | signed((PHI ** 2, PHI, 2 * PHI)) | signed((2 + PHI, 0, PHI ** 2))
    )
    pts["truncated icosidodecahedron"] = even_perms(
        signed((1 / PHI, 1 / PHI, 3 + PHI))
        | signed((2 / PHI, PHI, 1 + 2 * PHI))
        | signed((1 / PHI, PHI ** 2, -1 + 3 * PHI))
        | signed((2 * PHI - 1, 2, 2 + PHI))
        | signed((PHI, 3, 2 * PHI))
    )
    out = {k: dedupe(v) for k, v in pts.items()}

    octa = rotation_group([axis_rotation(unit((0, 0, 1)), np.pi / 2),
                           axis_rotation(unit((1, 1, 1)), 2 * np.pi / 3)])
    assert len(octa) == 24
    out["snub cube"] = snub(octa, (0, 0, 1), (1, 1, 1), (1, 0, 1), 4)

    icosa = rotation_group([axis_rotation(unit((0, 1, PHI)), 2 * np.pi / 5),
                            axis_rotation(unit((1, 1, 1)), 2 * np.pi / 3)])
    assert len(icosa) == 60
    # 5-fold axis (0,1,phi), adjacent 3-fold axis (1,1,1), 2-fold axis between them
    two = unit(unit((0, 1, PHI)) + unit((1, 1, 1)))
    cand = [g for g in icosa if np.isclose(np.trace(g), -1)]
    axes = []
    for g in cand:
        w, vecs = np.linalg.eig(g)
        a = np.real(vecs[:, np.argmin(np.abs(w - 1))])
        axes.append(unit(a) if np.dot(a, two) > 0 else -unit(a))
    two_axis = max(axes, key=lambda a: np.dot(a, two))
    out["snub dodecahedron"] = snub(icosa, (0, 1, PHI), (1, 1, 1), two_axis, 5)
    return out


PLATONIC = {
    "tetrahedron": ("{3,3,3}", signed((1, 1, 1), parity=0)),
    "cube": ("{4,4,4}", signed((1, 1, 1))),
    "octahedron": ("{3,3,3,3}", all_perms(signed((1, 0, 0)))),
    "dodecahedron": (
        "{5,5,5}",
        signed((1, 1, 1)) | even_perms(signed((0, 1 / PHI, PHI))),
    ),
    "icosahedron": ("{3,3,3,3,3}", even_perms(signed((0, 1, PHI)))),
}

ARCHIMEDEAN = {
    "truncated tetrahedron": ("{3,6,6}", "triakis tetrahedron"),
    "cuboctahedron": ("{3,4,3,4}", "rhombic dodecahedron"),
    "truncated cube": ("{3,8,8}", "triakis octahedron"),
    "truncated octahedron": ("{4,6,6}", "tetrakis hexahedron"),
    "rhombicuboctahedron": ("{3,4,4,4}", "deltoidal icositetrahedron"),
    "truncated cuboctahedron": ("{4,6,8}", "disdyakis dodecahedron"),
    "snub cube": ("{3,3,3,3,4}", "pentagonal icositetrahedron"),
    "icosidodecahedron": ("{3,5,3,5}", "rhombic triacontahedron"),
    "truncated dodecahedron": ("{3,10,10}", "triakis icosahedron"),
    "truncated icosahedron": ("{5,6,6}", "pentakis dodecahedron"),
    "rhombicosidodecahedron": ("{3,4,5,4}", "deltoidal hexecontahedron"),
    "truncated icosidodecahedron": ("{4,6,10}", "disdyakis triacontahedron"),
    "snub dodecahedron": ("{3,3,3,3,5}", "pentagonal hexecontahedron"),
}

CHIRAL = {"snub cube", "snub dodecahedron", "pentagonal icositetrahedron", "pentagonal hexecontahedron"}


def normalized(points, faces, scale):
    """Scale, then sort vertices and faces into a stable reading order."""
    pts = np.asarray(points) * scale
    pts = pts - pts.mean(axis=0)

    def key(p):
        return (round(-p[2], 9), round(float(np.arctan2(p[1], p[0])), 9), round(-np.linalg.norm(p), 9))

    vorder = sorted(range(len(pts)), key=lambda i: key(pts[i]))
    remap = {old: new for new, old in enumerate(vorder)}
    pts = pts[vorder]
    faces = [[remap[i] for i in f] for f in faces]
    cents = [pts[f].mean(axis=0) for f in faces]
    forder = sorted(range(len(faces)), key=lambda i: key(cents[i]))
    faces = [faces[i] for i in forder]
    # start each cycle at its smallest vertex index
    faces = [f[f.index(min(f)):] + f[: f.index(min(f))] for f in faces]
    return pts, faces


def edge_length(points, faces):
    f = faces[0]
    return np.linalg.norm(points[f[1]] - points[f[0]])


def catalan_from(points, faces):
    """Polar reciprocal about the midsphere, midradius 1."""
    p = build(points, faces)
    v = p.vertices
    a, b = p.topology.edges[0]
    mid = np.linalg.norm((v[a] + v[b]) / 2)
    v = v / mid
    normals = p.normals
    d = np.einsum("ij,ij->i", normals, np.array([v[list(f)].mean(axis=0) for f in p.faces]))
    dual_pts = normals / d[:, None]
    dual_faces = []
    for vi in range(p.n_vertices):
        around = [fi for fi, f in enumerate(p.faces) if vi in f]
        # walk faces around vi in cyclic order: next face shares the edge leaving vi
        cyc = [around[0]]
        while len(cyc) < len(around):
            f = p.faces[cyc[-1]]
            k = f.index(vi)
            # edge (prev, vi) in face f is edge index k-1; the neighbour across it
            nxt = p.adjacency[cyc[-1]][(k - 1) % len(f)]
            cyc.append(nxt)
        dual_faces.append(cyc)
    return dual_pts, dual_faces


def vertex_config(p, vi):
    around = []
    f0 = next(fi for fi, f in enumerate(p.faces) if vi in f)
    cyc = [f0]
    while True:
        f = p.faces[cyc[-1]]
        k = f.index(vi)
        nxt = p.adjacency[cyc[-1]][(k - 1) % len(f)]
        if nxt == f0:
            break
        cyc.append(nxt)
    around = [p.gon(f) for f in cyc]
    variants = []
    for seq in (around, around[::-1]):
        for r in range(len(seq)):
            variants.append(tuple(seq[r:] + seq[:r]))
    return min(variants)


PLATONIC_DUAL = {"tetrahedron": "tetrahedron", "cube": "octahedron", "octahedron": "cube",
                 "dodecahedron": "icosahedron", "icosahedron": "dodecahedron"}


def main():
    records = []
    for name, (index, pts) in PLATONIC.items():
        pts = dedupe(pts)
        faces = hull_faces(pts)
        pts, faces = normalized(pts, faces, 1.0 / edge_length(pts, faces))
        records.append({"name": name, "family": "Platonic", "index": index,
                        "chiral": False, "dual": PLATONIC_DUAL[name], "vertices": pts.tolist(), "faces": faces})

    arch = archimedean_points()
    for name, (index, dual_name) in ARCHIMEDEAN.items():
        pts = arch[name]
        faces = hull_faces(pts)
        pts, faces = normalized(pts, faces, 1.0 / edge_length(pts, faces))
        p = build(pts, faces, name)
        if name.startswith("snub"):
            cfg = PeelConfig()
            # default enantiomorph: square-start right-handed peels complete
            if name == "snub cube":
                sq = next(f for f in range(p.n_faces) if p.gon(f) == 4)
                if not peel(p, sq, p.adjacency[sq][0], cfg).complete:
                    m = mirror(p)
                    pts, faces = m.vertices, [list(f) for f in m.faces]
                    snub_cube_flipped = True
                else:
                    snub_cube_flipped = False
            else:
                # same rotational sense as the chosen snub cube
                if snub_cube_flipped:
                    m = mirror(p)
                    pts, faces = m.vertices, [list(f) for f in m.faces]
            p = build(pts, faces, name)
            pts, faces = normalized(p.vertices, [list(f) for f in p.faces], 1.0)
            p = build(pts, faces, name)
        conf = vertex_config(p, 0)
        assert "{" + ",".join(map(str, conf)) + "}" == index, (name, conf, index)
        records.append({"name": name, "family": "Archimedean", "index": index,
                        "chiral": name in CHIRAL, "dual": dual_name,
                        "vertices": np.asarray(p.vertices).tolist(), "faces": [list(f) for f in p.faces]})

        dpts, dfaces = catalan_from(p.vertices, [list(f) for f in p.faces])
        dpts, dfaces = normalized(dpts, dfaces, 1.0)
        records.append({"name": dual_name, "family": "Catalan", "index": "[" + index[1:-1] + "]",
                        "chiral": dual_name in CHIRAL, "dual": name,
                        "vertices": dpts.tolist(), "faces": dfaces})

    order = {"Platonic": 0, "Archimedean": 1, "Catalan": 2}
    records.sort(key=lambda r: order[r["family"]])
    for r in records:
        r["vertices"] = [[round(x, 15) for x in v] for v in r["vertices"]]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"solids": records}, indent=1) + "\n")
    print(f"wrote {len(records)} solids to {OUT}")


if __name__ == "__main__":
    main()
