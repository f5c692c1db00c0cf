"""Peelability verdicts, net-pattern classes and the reference-table comparison."""

from __future__ import annotations

import csv
import enum
import io
import json
from collections import Counter
from dataclasses import dataclass

from . import catalog
from .geometry import Polyhedron
from .peeling import Outcome, PeelConfig, PeelSequence, peel_all_pairs


class Verdict(str, enum.Enum):
    PERFECT = "Perfect"
    POSSIBLE = "Possible"
    IMPOSSIBLE = "Impossible"


# name -> (Archimedean verdict, Catalan verdict, Catalan skeleton has a Hamiltonian path)
REFERENCE_TABLE = {
    "cuboctahedron": ("Impossible", "Perfect", False),
    "truncated icosidodecahedron": ("Possible", "Impossible", True),
    "truncated cuboctahedron": ("Perfect", "Impossible", True),
    "icosidodecahedron": ("Impossible", "Possible", False),
    "rhombicosidodecahedron": ("Impossible", "Perfect", False),
    "rhombicuboctahedron": ("Impossible", "Perfect", False),
    "snub cube": ("Possible", "Perfect", True),
    "snub dodecahedron": ("Impossible", "Perfect", True),
    "truncated cube": ("Impossible", "Impossible", False),
    "truncated dodecahedron": ("Impossible", "Impossible", False),
    "truncated icosahedron": ("Perfect", "Perfect", True),
    "truncated octahedron": ("Perfect", "Possible", True),
    "truncated tetrahedron": ("Possible", "Possible", True),
}


def expected_verdicts() -> dict[str, Verdict]:
    """Reference verdict for each of the 31 catalog solids."""
    out = {name: Verdict.PERFECT for name in catalog.names("Platonic")}
    for arch, (va, vc, _) in REFERENCE_TABLE.items():
        out[arch] = Verdict(va)
        out[catalog.lookup(arch).dual] = Verdict(vc)
    return out


def expected_hamiltonian() -> dict[str, bool]:
    """Reference Hamiltonian-path availability for Archimedean and Catalan skeletons."""
    out = {}
    for arch, (_, _, ham) in REFERENCE_TABLE.items():
        out[arch] = True
        out[catalog.lookup(arch).dual] = ham
    return out


@dataclass(frozen=True)
class PeelabilityVerdict:
    solid: str
    verdict: Verdict
    total: int
    complete: int
    runs: tuple[PeelSequence, ...]

    @property
    def incomplete(self) -> int:
        return self.total - self.complete


def verdict_from_counts(complete: int, total: int) -> Verdict:
    if complete == total:
        return Verdict.PERFECT
    if complete == 0:
        return Verdict.IMPOSSIBLE
    return Verdict.POSSIBLE


def classify(p: Polyhedron, cfg: PeelConfig = PeelConfig()) -> PeelabilityVerdict:
    runs = tuple(peel_all_pairs(p, cfg))
    complete = sum(r.complete for r in runs)
    return PeelabilityVerdict(p.name, verdict_from_counts(complete, len(runs)), len(runs), complete, runs)


# -- net patterns ------------------------------------------------------------


@dataclass(frozen=True)
class PatternSignature:
    """Gon counts along the peel plus, for every inner face, the turn taken.

    ``turns[i]`` is the position of the exit hinge in face ``i``'s cycle,
    counted from its entry hinge (``None`` for the first and last face).
    """

    gons: tuple[int, ...]
    turns: tuple[int | None, ...]
    outcome: Outcome

    def __len__(self) -> int:
        return len(self.gons)

    def position_of(self, gon: int, occurrence: int = 1) -> int | None:
        """1-based sequence position of the ``occurrence``-th face with ``gon`` sides."""
        seen = 0
        for i, g in enumerate(self.gons, start=1):
            if g == gon:
                seen += 1
                if seen == occurrence:
                    return i
        return None


def signature(p: Polyhedron, seq: PeelSequence) -> PatternSignature:
    topo = p.topology
    order = seq.order
    gons = tuple(p.gon(f) for f in order)
    turns: list[int | None] = [None] * len(order)
    for i in range(1, len(order) - 1):
        f = order[i]
        entry = topo.shared_edge(f, order[i - 1])
        exit_ = topo.shared_edge(f, order[i + 1])
        turns[i] = (exit_ - entry) % len(topo.faces[f])
    return PatternSignature(gons, tuple(turns), seq.outcome)


@dataclass(frozen=True)
class PatternClass:
    signature: PatternSignature
    count: int
    representative: PeelSequence


def pattern_classes(p: Polyhedron, runs) -> list[PatternClass]:
    """Group runs by exact signature; classes are ordered by signature."""
    buckets: dict[PatternSignature, list[PeelSequence]] = {}
    for r in runs:
        buckets.setdefault(signature(p, r), []).append(r)
    out = []
    for sig, members in buckets.items():
        rep = min(members, key=lambda r: r.order[:2])
        out.append(PatternClass(sig, len(members), rep))
    out.sort(key=lambda c: (c.signature.outcome.value, c.signature.gons, _turn_key(c.signature.turns)))
    return out


def _turn_key(turns):
    return tuple(-1 if t is None else t for t in turns)


def failure_classes(p: Polyhedron, runs) -> Counter:
    """Coarse failure patterns keyed by (gon sequence of the prefix, faces left)."""
    return Counter(
        (tuple(p.gon(f) for f in r.order), len(r.remaining)) for r in runs if not r.complete
    )


# -- catalog table -----------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    name: str
    index: str
    family: str
    verdict: Verdict
    complete: int
    total: int
    expected: Verdict

    @property
    def matches(self) -> bool:
        return self.verdict is self.expected

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "index": self.index,
            "family": self.family,
            "verdict": self.verdict.value,
            "complete-pairs": self.complete,
            "total-pairs": self.total,
        }


def classify_catalog(cfg: PeelConfig = PeelConfig(), family: str | None = None,
                     solids=None) -> list[TableRow]:
    expected = expected_verdicts()
    recs = [catalog.lookup(s) for s in solids] if solids else catalog.records(family)
    rows = []
    for rec in recs:
        v = classify(rec.polyhedron, cfg)
        rows.append(TableRow(rec.name, rec.index, rec.family, v.verdict, v.complete, v.total,
                             expected[rec.name]))
    return rows


COLUMNS = ("name", "index", "family", "verdict", "complete-pairs", "total-pairs")


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.as_dict())
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
