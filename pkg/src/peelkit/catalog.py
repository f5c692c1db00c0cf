"""The 31 Platonic, Archimedean and Catalan solids, plus OFF/JSON ingestion."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .geometry import DEFAULT_TOL, Polyhedron, build, mirror

FAMILIES = ("Platonic", "Archimedean", "Catalan")

ALIASES = {
    "hexahedron": "cube",
    "regular tetrahedron": "tetrahedron",
    "small rhombicuboctahedron": "rhombicuboctahedron",
    "great rhombicuboctahedron": "truncated cuboctahedron",
    "small rhombicosidodecahedron": "rhombicosidodecahedron",
    "great rhombicosidodecahedron": "truncated icosidodecahedron",
    "snub hexahedron": "snub cube",
    "small triakis octahedron": "triakis octahedron",
    "trapezoidal icositetrahedron": "deltoidal icositetrahedron",
    "trapezoidal hexecontahedron": "deltoidal hexecontahedron",
    "hexakis octahedron": "disdyakis dodecahedron",
    "hexakis icosahedron": "disdyakis triacontahedron",
}


class UnknownSolidError(KeyError):
    pass


class OFFParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SolidRecord:
    name: str
    family: str
    index: str
    polyhedron: Polyhedron
    chiral: bool
    dual: str | None

    @property
    def counts(self) -> tuple[int, int, int]:
        """(m, l, n): vertices, edges, faces."""
        p = self.polyhedron
        return p.n_vertices, p.n_edges, p.n_faces


def _key(s: str) -> str:
    s = s.strip().lower()
    if s[:1] in "{[":
        return re.sub(r"\s+", "", s)
    return re.sub(r"[\s_\-]+", " ", s)


@lru_cache(maxsize=None)
def _raw() -> tuple[dict, ...]:
    text = resources.files("peelkit").joinpath("data/solids.json").read_text()
    return tuple(json.loads(text)["solids"])


@lru_cache(maxsize=None)
def _record(name: str) -> SolidRecord:
    for r in _raw():
        if r["name"] == name:
            p = build(r["vertices"], r["faces"], r["name"])
            return SolidRecord(r["name"], r["family"], r["index"], p, r["chiral"], r["dual"])
    raise UnknownSolidError(name)


def names(family: str | None = None) -> list[str]:
    """Catalog names in stored order, optionally restricted to one family."""
    if family is not None:
        fam = family.capitalize()
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
        return [r["name"] for r in _raw() if r["family"] == fam]
    return [r["name"] for r in _raw()]


def records(family: str | None = None) -> list[SolidRecord]:
    return [_record(n) for n in names(family)]


def resolve(name_or_index: str) -> str:
    key = _key(name_or_index)
    key = ALIASES.get(key, key)
    for r in _raw():
        if key == r["name"] or key == _key(r["index"]):
            return r["name"]
    raise UnknownSolidError(f"unknown solid {name_or_index!r}")


def lookup(name_or_index: str, mirrored: bool = False) -> SolidRecord:
    """Find a solid by name (``"snub cube"``) or bracket index (``"{3,3,3,3,4}"``).

    Chiral solids come in their default enantiomorph; ``mirrored=True``
    returns the other one.
    """
    rec = _record(resolve(name_or_index))
    if mirrored:
        rec = SolidRecord(rec.name, rec.family, rec.index, mirror(rec.polyhedron),
                          rec.chiral, rec.dual)
    return rec


def polyhedron(name_or_index: str, mirrored: bool = False) -> Polyhedron:
    return lookup(name_or_index, mirrored).polyhedron


# -- file formats ----------------------------------------------------------


def ingest_off(text: str, name: str | None = None, tol: float = DEFAULT_TOL) -> Polyhedron:
    """Parse ASCII OFF text.

    Grammar: optional ``#`` comments and blank lines anywhere; a header line
    ``OFF``; a counts line ``nv nf [ne]``; ``nv`` lines of three floats;
    ``nf`` lines ``k i_1 ... i_k`` (trailing colour values are ignored).
    """
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((no, body))
    if not lines:
        raise OFFParseError(1, "empty input")

    no, head = lines[0]
    tokens = head.split()
    if tokens[0] != "OFF":
        raise OFFParseError(no, f"expected header 'OFF', got {tokens[0]!r}")
    rest = lines[1:]
    if len(tokens) > 1:
        # counts on the header line
        rest = [(no, " ".join(tokens[1:]))] + rest
    if not rest:
        raise OFFParseError(no, "missing counts line")

    no, counts = rest[0]
    try:
        nums = [int(t) for t in counts.split()]
    except ValueError:
        raise OFFParseError(no, f"bad counts line {counts!r}") from None
    if len(nums) not in (2, 3):
        raise OFFParseError(no, "counts line needs 'nv nf [ne]'")
    nv, nf = nums[0], nums[1]
    body = rest[1:]
    if len(body) < nv + nf:
        last = body[-1][0] if body else no
        raise OFFParseError(last, f"expected {nv} vertex and {nf} face lines, found {len(body)} lines")
    if len(body) > nv + nf:
        raise OFFParseError(body[nv + nf][0], f"unexpected extra line (counts say {nv} + {nf})")

    verts = []
    for no, line in body[:nv]:
        parts = line.split()
        try:
            xyz = [float(t) for t in parts[:3]]
        except ValueError:
            raise OFFParseError(no, f"bad vertex line {line!r}") from None
        if len(xyz) != 3 or len(parts) != 3:
            raise OFFParseError(no, "vertex line needs exactly 3 coordinates")
        verts.append(xyz)

    faces = []
    for no, line in body[nv:]:
        parts = line.split()
        try:
            k = int(parts[0])
            idx = [int(t) for t in parts[1:1 + k]]
        except ValueError:
            raise OFFParseError(no, f"bad face line {line!r}") from None
        if len(idx) != k:
            raise OFFParseError(no, f"face declares {k} vertices but lists {len(idx)}")
        faces.append(idx)

    return build(verts, faces, name, tol=tol)


def to_off(p: Polyhedron) -> str:
    out = ["OFF", f"{p.n_vertices} {p.n_faces} {p.n_edges}"]
    out += [" ".join(repr(float(x)) for x in v) for v in p.vertices]
    out += [" ".join(map(str, (len(f), *f))) for f in p.faces]
    return "\n".join(out) + "\n"


def ingest_json(text: str, tol: float = DEFAULT_TOL) -> Polyhedron:
    data = json.loads(text)
    return build(data["vertices"], data["faces"], data.get("name"), tol=tol)


def to_json(p: Polyhedron) -> str:
    data = {
        "vertices": [[float(x) for x in v] for v in p.vertices],
        "faces": [list(f) for f in p.faces],
        "name": p.name,
    }
    return json.dumps(data)


def load(path_or_name: str, tol: float = DEFAULT_TOL) -> Polyhedron:
    """Catalog solid by name/index, or a ``.off`` / ``.json`` file path."""
    lower = path_or_name.lower()
    if lower.endswith(".off") or lower.endswith(".json"):
        with open(path_or_name) as fh:
            text = fh.read()
        stem = path_or_name.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        if lower.endswith(".off"):
            return ingest_off(text, name=stem, tol=tol)
        p = ingest_json(text, tol=tol)
        return p if p.name else Polyhedron(p.vertices, p.topology, stem)
    return polyhedron(path_or_name)


# -- catalog verification --------------------------------------------------


def vertex_configuration(p: Polyhedron, v: int) -> tuple[int, ...]:
    """Gon counts around vertex ``v``, canonical under rotation and reflection."""
    f0 = next(fi for fi, f in enumerate(p.faces) if v in f)
    cyc = [f0]
    while True:
        f = p.faces[cyc[-1]]
        k = f.index(v)
        nxt = p.adjacency[cyc[-1]][(k - 1) % len(f)]
        if nxt == f0:
            break
        cyc.append(nxt)
    seq = [p.gon(f) for f in cyc]
    variants = [tuple(s[r:] + s[:r]) for s in (seq, seq[::-1]) for r in range(len(s))]
    return min(variants)


def format_index(config, family: str) -> str:
    body = ",".join(map(str, config))
    return f"[{body}]" if family == "Catalan" else "{" + body + "}"


@dataclass
class CatalogCheck:
    name: str
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_catalog(tol: float = 1e-6) -> list[CatalogCheck]:
    """Euler, regularity/uniformity and Archimedean/Catalan duality checks."""
    from .graphs import dual, isomorphic, skeleton

    report = []
    for rec in records():
        p = rec.polyhedron
        m, l, n = rec.counts
        checks = {"euler": m - l + n == 2}
        if rec.family in ("Platonic", "Archimedean"):
            regular = True
            for f in range(n):
                e = p.edge_lengths(f)
                if np.abs(e - e.mean()).max() > tol:
                    regular = False
                pts = p.face_points(f) - p.centroids[f]
                r = np.linalg.norm(pts, axis=1)
                if np.ptp(r) > tol:
                    regular = False
            checks["regular faces"] = regular
            confs = {vertex_configuration(p, v) for v in range(m)}
            checks["uniform vertices"] = len(confs) == 1
            if rec.family == "Archimedean":
                checks["index"] = format_index(next(iter(confs)), rec.family) == rec.index
        if rec.family == "Catalan":
            partner = lookup(rec.dual)
            checks["index"] = rec.index[1:-1] == partner.index[1:-1]
            checks["dual of partner"] = isomorphic(skeleton(p), skeleton(dual(partner.polyhedron)))
            radii = np.einsum("ij,ij->i", p.normals, p.centroids)
            checks["face-transitive radius"] = bool(np.ptp(radii) < tol)
        report.append(CatalogCheck(rec.name, checks))
    return report
