"""Skeleton and face graphs, dual polyhedra, Hamiltonian paths, isomorphism."""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass

import numpy as np

from .geometry import Polyhedron, build
from .peeling import PeelSequence

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class SkeletonGraph:
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "SkeletonGraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            adj[a].add(b)
            adj[b].add(a)
        return cls(tuple(tuple(sorted(s)) for s in adj))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nb in enumerate(self.adjacency) for b in nb if a < b]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_polyhedral(self) -> bool:
        """Simple, connected and minimum degree at least 3."""
        return self.connected() and min(len(a) for a in self.adjacency) >= 3

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adjacency[v]:
                    if color[w] < 0:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return None
        return [v for v in range(self.n) if color[v] == 0], [v for v in range(self.n) if color[v] == 1]


def skeleton(p: Polyhedron) -> SkeletonGraph:
    return SkeletonGraph.from_edges(p.n_vertices, p.topology.edges)


def face_graph(p: Polyhedron) -> SkeletonGraph:
    """Faces as vertices, adjacency as edges; the skeleton of the dual."""
    return SkeletonGraph.from_edges(p.n_faces, p.topology.edge_faces.values())


def dual(p: Polyhedron) -> Polyhedron:
    """Dual with vertices at face centroids and faces = vertex figures."""
    faces = []
    for v in range(p.n_vertices):
        f0 = next(fi for fi, f in enumerate(p.faces) if v in f)
        cyc = [f0]
        while True:
            f = p.faces[cyc[-1]]
            k = f.index(v)
            nxt = p.adjacency[cyc[-1]][(k - 1) % len(f)]
            if nxt == f0:
                break
            cyc.append(nxt)
        faces.append(cyc)
    name = f"dual of {p.name}" if p.name else None
    return build(p.centroids, faces, name, check_convex=False)


# -- isomorphism -------------------------------------------------------------


def _refine(adj, colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition.

    New colours are ranks of sorted signatures, so the result does not
    depend on vertex labels.
    """
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncol:
            return new
        colors, ncol = new, len(ranks)


def canonical_form(g: SkeletonGraph) -> tuple:
    """Canonical certificate by refinement and individualisation.

    Two graphs are isomorphic iff their certificates are equal. No
    automorphism pruning; fine for graphs of a few hundred vertices with
    the small search trees that polyhedral graphs produce.
    """
    adj = g.adjacency
    best = None
    sys.setrecursionlimit(max(10_000, sys.getrecursionlimit()))

    def search(colors):
        nonlocal best
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == len(colors):
            cert = tuple(sorted((min(colors[a], colors[b]), max(colors[a], colors[b]))
                                for a in range(len(adj)) for b in adj[a] if a < b))
            if best is None or cert < best:
                best = cert
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        for v in cells[target]:
            individualised = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
            search(_refine(adj, individualised))

    search(_refine(adj, [0] * len(adj)))
    return (g.n, best)


def isomorphic(g: SkeletonGraph, h: SkeletonGraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return False
    return canonical_form(g) == canonical_form(h)


# -- Hamiltonian paths -------------------------------------------------------


class HamStatus(str, enum.Enum):
    FOUND = "found"
    NONE_PARITY = "none(parity)"
    NONE_EXHAUSTIVE = "none(exhaustive)"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class HamiltonianReport:
    status: HamStatus
    witness: tuple[int, ...] | None
    steps: int

    @property
    def found(self) -> bool:
        return self.status is HamStatus.FOUND

    def to_json(self, solid: str | None, n: int) -> dict:
        return {
            "solid": solid,
            "skeleton_vertices": n,
            "hamiltonian": self.status.value,
            "witness": list(self.witness) if self.witness else [],
        }


def is_hamiltonian_path(g: SkeletonGraph, path) -> bool:
    path = list(path)
    if len(path) != g.n or len(set(path)) != g.n:
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


class _Budget(Exception):
    pass


def _independent_set(g: SkeletonGraph) -> set[int]:
    """Greedy large independent set (minimum degree first)."""
    chosen: set[int] = set()
    blocked: set[int] = set()
    for v in sorted(range(g.n), key=lambda v: (len(g.adjacency[v]), v)):
        if v not in blocked:
            chosen.add(v)
            blocked.add(v)
            blocked.update(g.adjacency[v])
    return chosen


def hamiltonian_path(g: SkeletonGraph, budget: int = DEFAULT_BUDGET) -> HamiltonianReport:
    """Depth-first search for a Hamiltonian path.

    The bipartite parity test runs first. The search then tries every start
    vertex in index order, extending toward the unvisited neighbour with the
    fewest onward options. A branch is cut when the unvisited vertices do not
    form one connected piece, when more than one of them is a forced
    endpoint, or when an independent set has too many unvisited members to
    fit between the others.
    """
    n = g.n
    adj = g.adjacency
    if n == 0:
        return HamiltonianReport(HamStatus.NONE_EXHAUSTIVE, None, 0)
    if n == 1:
        return HamiltonianReport(HamStatus.FOUND, (0,), 0)

    parts = g.bipartition()
    if parts is not None and abs(len(parts[0]) - len(parts[1])) >= 2:
        return HamiltonianReport(HamStatus.NONE_PARITY, None, 0)

    indep = parts[0] if parts and len(parts[0]) >= len(parts[1]) else None
    indep = set(indep) if indep is not None else _independent_set(g)
    in_i = [v in indep for v in range(n)]
    if len(indep) > n - len(indep) + 1:
        return HamiltonianReport(HamStatus.NONE_EXHAUSTIVE, None, 0)

    visited = [False] * n
    path: list[int] = []
    steps = 0
    counts = {"I": len(indep), "N": n - len(indep)}

    def feasible(head: int) -> bool:
        # independent-set bound on the sequence head, u_1 .. u_r
        i_left, n_left = counts["I"], counts["N"]
        if in_i[head]:
            if i_left > n_left:
                return False
        elif i_left > n_left + 1:
            return False
        # connectivity of unvisited vertices through head, and forced endpoints
        start = next((w for w in adj[head] if not visited[w]), None)
        remaining = i_left + n_left
        if remaining == 0:
            return True
        if start is None:
            return False
        seen = {start}
        stack = [start]
        ends = 0
        while stack:
            v = stack.pop()
            free = 0
            for w in adj[v]:
                if not visited[w]:
                    free += 1
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            # degree towards unvisited vertices and the head
            d = free + (1 if head in adj[v] else 0)
            if d <= 1:
                ends += 1
                if ends > 1:
                    return False
        if len(seen) != remaining:
            return False
        return True

    def extend(v: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise _Budget
        if len(path) == n:
            return True
        options = [w for w in adj[v] if not visited[w]]
        options.sort(key=lambda w: (sum(1 for x in adj[w] if not visited[x]), w))
        for w in options:
            visited[w] = True
            path.append(w)
            counts["I" if in_i[w] else "N"] -= 1
            if feasible(w) and extend(w):
                return True
            counts["I" if in_i[w] else "N"] += 1
            path.pop()
            visited[w] = False
        return False

    sys.setrecursionlimit(max(10_000, sys.getrecursionlimit()))
    try:
        for s in range(n):
            visited[s] = True
            path.append(s)
            counts["I" if in_i[s] else "N"] -= 1
            if feasible(s) and extend(s):
                return HamiltonianReport(HamStatus.FOUND, tuple(path), steps)
            counts["I" if in_i[s] else "N"] += 1
            path.pop()
            visited[s] = False
    except _Budget:
        return HamiltonianReport(HamStatus.TIMEOUT, None, steps)
    return HamiltonianReport(HamStatus.NONE_EXHAUSTIVE, None, steps)


def peel_implies_path(seq: PeelSequence, g: SkeletonGraph) -> bool:
    """Whether a complete peel order is a Hamiltonian path of the face graph."""
    if not seq.complete:
        raise ValueError("peel_implies_path needs a complete peel sequence")
    return is_hamiltonian_path(g, seq.order)


def bipartite_sizes(g: SkeletonGraph) -> tuple[int, int] | None:
    parts = g.bipartition()
    return None if parts is None else (len(parts[0]), len(parts[1]))


def degree_histogram(g: SkeletonGraph) -> dict[int, int]:
    return {int(k): int(v) for k, v in zip(*np.unique([len(a) for a in g.adjacency], return_counts=True))}
