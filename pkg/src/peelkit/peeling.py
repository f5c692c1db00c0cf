"""Greedy apple-peel face selection around an axis through the start face."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .geometry import DEFAULT_TOL, Polyhedron, rotate_to_top


class Handedness(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"


class Outcome(str, enum.Enum):
    COMPLETE = "complete"
    TERMINATED = "terminated"
    ISOLATED = "isolated"


class Rule(str, enum.Enum):
    START = "start"
    GIVEN = "given"
    ONLY_NEIGHBOR = "only-neighbor"
    HIGHEST_LEFT = "highest-left"
    LOWEST = "lowest-right"


class NotAdjacentError(ValueError):
    """The second start face is not a neighbour of the first."""


class DegeneratePlaneError(ArithmeticError):
    """The side plane is undefined because c_k is parallel to the axis."""


@dataclass(frozen=True)
class PeelConfig:
    """Peel settings.

    ``on_plane`` decides candidates whose centroid lies within ``tol`` of the
    side plane: ``"exclude"`` (default) keeps them out of the left set,
    ``"include"`` counts them as left.
    """

    handedness: Handedness = Handedness.RIGHT
    tol: float = DEFAULT_TOL
    max_steps: int | None = None
    on_plane: str = "exclude"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.on_plane not in ("exclude", "include"):
            raise ValueError("on_plane must be 'exclude' or 'include'")
        object.__setattr__(self, "handedness", Handedness(self.handedness))


@dataclass(frozen=True)
class Step:
    face: int
    rule: Rule
    tie: bool = False


@dataclass(frozen=True)
class PeelSequence:
    order: tuple[int, ...]
    outcome: Outcome
    remaining: tuple[int, ...]
    steps: tuple[Step, ...]
    n_faces: int
    handedness: Handedness = Handedness.RIGHT
    solid: str | None = None

    @property
    def f1(self) -> int:
        return self.order[0]

    @property
    def f2(self) -> int:
        return self.order[1]

    @property
    def complete(self) -> bool:
        return self.outcome is Outcome.COMPLETE

    def __len__(self) -> int:
        return len(self.order)

    def to_json(self) -> dict:
        return {
            "solid": self.solid,
            "f1": self.f1,
            "f2": self.f2,
            "handedness": self.handedness.value,
            "order": list(self.order),
            "outcome": self.outcome.value,
            "remaining": list(self.remaining),
        }


@dataclass(frozen=True)
class SidePlane:
    """Plane through the origin, the axis centroid ``c1`` and ``ck``."""

    c1: np.ndarray
    ck: np.ndarray
    normal: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normal", np.cross(self.ck, self.c1))

    def degenerate(self, tol: float = DEFAULT_TOL) -> bool:
        scale = np.linalg.norm(self.c1) * np.linalg.norm(self.ck)
        return bool(np.linalg.norm(self.normal) <= tol * max(scale, 1.0))


def is_left(plane: SidePlane, point, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``(ck x c1) . OP > tol``; points within ``tol`` of the plane are not left."""
    if plane.degenerate(tol):
        raise DegeneratePlaneError("current face centroid is collinear with the axis")
    return bool(np.dot(plane.normal, point) > tol)


def peel(p: Polyhedron, f1: int, f2: int, cfg: PeelConfig = PeelConfig()) -> PeelSequence:
    """Run the greedy peel from the ordered start pair ``(f1, f2)``."""
    topo = p.topology
    n = topo.n_faces
    if not (0 <= f1 < n and 0 <= f2 < n):
        raise IndexError(f"face index out of range 0..{n - 1}")
    if f2 not in topo.adjacency[f1]:
        raise NotAdjacentError(f"face {f2} is not adjacent to face {f1}")

    q = rotate_to_top(p.centered(), f1, cfg.tol)
    c = q.centroids
    z = c[:, 2]
    c1 = c[f1]
    sign = 1.0 if cfg.handedness is Handedness.RIGHT else -1.0
    tol = cfg.tol
    limit = n if cfg.max_steps is None else min(n, cfg.max_steps)

    selected = np.zeros(n, dtype=bool)
    selected[f1] = selected[f2] = True
    order = [f1, f2]
    steps = [Step(f1, Rule.START), Step(f2, Rule.GIVEN)]

    while len(order) < limit:
        cur = order[-1]
        cand = sorted({g for g in topo.adjacency[cur] if not selected[g]})
        if not cand:
            break
        tie = False
        if len(cand) == 1:
            nxt, rule = cand[0], Rule.ONLY_NEIGHBOR
        else:
            plane = SidePlane(c1, c[cur])
            left = []
            if not plane.degenerate(tol):
                bound = -tol if cfg.on_plane == "include" else tol
                left = [g for g in cand if sign * np.dot(plane.normal, c[g]) > bound]
            if left:
                best = max(z[g] for g in left)
                near = [g for g in left if best - z[g] < tol]
                nxt, rule = near[0], Rule.HIGHEST_LEFT
                tie = len(near) > 1
            else:
                best = min(z[g] for g in cand)
                near = [g for g in cand if z[g] - best < tol]
                nxt, rule = near[0], Rule.LOWEST
                tie = len(near) > 1
        selected[nxt] = True
        order.append(nxt)
        steps.append(Step(nxt, rule, tie))

    remaining = tuple(int(g) for g in np.flatnonzero(~selected))
    if not remaining:
        outcome = Outcome.COMPLETE
    elif any(all(selected[h] for h in topo.adjacency[g]) for g in remaining):
        outcome = Outcome.ISOLATED
    else:
        outcome = Outcome.TERMINATED
    return PeelSequence(
        order=tuple(order),
        outcome=outcome,
        remaining=remaining,
        steps=tuple(steps),
        n_faces=n,
        handedness=cfg.handedness,
        solid=p.name,
    )


def start_pairs(p: Polyhedron) -> list[tuple[int, int]]:
    """All ordered adjacent face pairs, sorted; there are ``2 * l`` of them."""
    return sorted((f, g) for f in range(p.n_faces) for g in set(p.adjacency[f]))


def peel_all_pairs(p: Polyhedron, cfg: PeelConfig = PeelConfig()) -> list[PeelSequence]:
    return [peel(p, f1, f2, cfg) for f1, f2 in start_pairs(p)]
