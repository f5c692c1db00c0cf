"""Command-line front end: ``peelkit list|peel|classify|graph-analysis|replay``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, catalog, classify, graphs, planar, unfold
from .geometry import DEFAULT_TOL, PolyhedronError
from .peeling import NotAdjacentError, PeelConfig, peel

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BAD_PAIR = 2
EXIT_UNKNOWN_SOLID = 3
EXIT_BAD_INPUT = 4
EXIT_INCOMPLETE = 10

TOLERANCE_ENV = "PEELKIT_TOLERANCE"


@dataclass
class RunManifest:
    """Everything needed to repeat a ``peel`` run byte for byte."""

    command: str
    solid: str
    f1: int
    f2: int
    handedness: str
    tolerance: float
    on_plane: str
    outputs: dict = field(default_factory=dict)
    step: int | None = None
    note: str = "deterministic: no random state is used"
    version: str = __version__


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"{TOLERANCE_ENV} must be a number, got {raw!r}") from None


def _scope(scope: str) -> list[str]:
    """'all', a family name, or a single solid."""
    if scope.lower() == "all":
        return catalog.names()
    if scope.capitalize() in catalog.FAMILIES:
        return catalog.names(scope)
    return [catalog.resolve(scope)]


# -- commands ----------------------------------------------------------------


def cmd_list(args) -> int:
    if args.faces:
        p = catalog.load(args.faces)
        print("face  gon  neighbours")
        for f in range(p.n_faces):
            print(f"{f:4d}  {p.gon(f):3d}  {' '.join(map(str, p.adjacency[f]))}")
        return EXIT_OK
    recs = catalog.records(args.family)
    width = max(len(r.name) for r in recs)
    print(f"{'name':<{width}}  {'index':<14}  {'family':<11}  {'n':>3}  {'m':>3}  {'l':>3}")
    for r in recs:
        m, l, n = r.counts
        print(f"{r.name:<{width}}  {r.index:<14}  {r.family:<11}  {n:3d}  {m:3d}  {l:3d}")
    return EXIT_OK


def _run_peel(man: RunManifest, quiet: bool = False) -> int:
    p = catalog.load(man.solid, tol=man.tolerance)
    cfg = PeelConfig(handedness=man.handedness, tol=man.tolerance, on_plane=man.on_plane)
    seq = peel(p, man.f1, man.f2, cfg)
    payload = seq.to_json()
    out = man.outputs
    if out.get("json"):
        _write(out["json"], _dump(payload))
    elif not quiet:
        sys.stdout.write(_dump(payload))
    if out.get("net"):
        _write(out["net"], unfold.unfold(p, seq).to_svg())
    if out.get("graph"):
        _write(out["graph"], planar.embed(p, seq).to_svg())
    if out.get("obj"):
        step = man.step if man.step is not None else len(seq)
        _write(out["obj"], unfold.partial_unfold(p, seq, step).to_obj())
    if out.get("manifest"):
        _write(out["manifest"], _dump(asdict(man)))
    print(f"{seq.solid}: {seq.outcome.value}, {len(seq)}/{seq.n_faces} faces", file=sys.stderr)
    return EXIT_OK if seq.complete else EXIT_INCOMPLETE


def cmd_peel(args) -> int:
    outputs = {k: getattr(args, k) for k in ("json", "net", "graph", "obj", "manifest") if getattr(args, k)}
    man = RunManifest("peel", args.solid, args.f1, args.f2, args.handedness, args.tolerance,
                      args.on_plane, outputs, args.step)
    return _run_peel(man)


def cmd_replay(args) -> int:
    data = json.loads(Path(args.manifest).read_text())
    data.pop("version", None)
    man = RunManifest(**data)
    if man.command != "peel":
        raise SystemExit(f"cannot replay command {man.command!r}")
    return _run_peel(man)


def cmd_classify(args) -> int:
    cfg = PeelConfig(handedness=args.handedness, tol=args.tolerance, on_plane=args.on_plane)
    rows = classify.classify_catalog(cfg, solids=_scope(args.scope))
    width = max(len(r.name) for r in rows)
    mismatches = 0
    for r in rows:
        line = f"{r.name:<{width}}  {r.index:<14}  {r.verdict.value:<10}  {r.complete:3d}/{r.total}"
        if args.expect:
            line += "  ok" if r.matches else f"  MISMATCH (expected {r.expected.value})"
            mismatches += not r.matches
        print(line)
        if args.patterns:
            _print_patterns(catalog.polyhedron(r.name), cfg)
    if args.csv:
        _write(args.csv, classify.rows_to_csv(rows))
    if args.json:
        _write(args.json, classify.rows_to_json(rows))
    if args.expect:
        print(f"{len(rows) - mismatches}/{len(rows)} rows match {args.expect}")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _print_patterns(p, cfg) -> None:
    v = classify.classify(p, cfg)
    for c in classify.pattern_classes(p, v.runs):
        sig = c.signature
        rep = c.representative
        gons = "".join(str(g) if g < 10 else f"({g})" for g in sig.gons)
        print(f"    start {sig.gons[0]}-gon  {sig.outcome.value:<10}  x{c.count:<3}  "
              f"len {len(sig):3d}  rep ({rep.f1},{rep.f2})  {gons}")


def cmd_graph_analysis(args) -> int:
    names = _scope(args.scope)
    expected = classify.expected_hamiltonian()
    reports = []
    mismatches = 0
    width = max(map(len, names))
    for name in names:
        p = catalog.polyhedron(name)
        g = graphs.skeleton(p)
        rep = graphs.hamiltonian_path(g, budget=args.budget)
        reports.append(rep.to_json(name, g.n))
        line = f"{name:<{width}}  {g.n:3d}  {rep.status.value}"
        if args.expect and name in expected:
            ok = rep.found == expected[name] and rep.status is not graphs.HamStatus.TIMEOUT
            line += "  ok" if ok else "  MISMATCH"
            mismatches += not ok
        print(line)
    found = sum(r["hamiltonian"] == "found" for r in reports)
    print(f"{found} found / {len(reports) - found} not found")
    if args.json:
        _write(args.json, _dump(reports))
    return EXIT_MISMATCH if mismatches else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="peelkit", description="Apple-peel unfolding of convex polyhedra.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def peel_opts(sp):
        sp.add_argument("--handedness", choices=("right", "left"), default="right")
        sp.add_argument("--tolerance", type=float, default=default_tolerance(),
                        help=f"geometric tolerance (default from ${TOLERANCE_ENV} or {DEFAULT_TOL})")
        sp.add_argument("--on-plane", choices=("exclude", "include"), default="exclude",
                        help="treat candidates on the side plane as right (exclude) or left (include)")

    sp = sub.add_parser("list", help="print the catalog")
    sp.add_argument("--family", choices=catalog.FAMILIES, type=str.capitalize)
    sp.add_argument("--faces", metavar="SOLID", help="print gon and neighbours per face index")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("peel", help="peel one solid from a start pair")
    sp.add_argument("solid", help="catalog name, bracket index, or .off/.json path")
    sp.add_argument("--f1", type=int, required=True)
    sp.add_argument("--f2", type=int, required=True)
    peel_opts(sp)
    sp.add_argument("--json", metavar="PATH", help="write the sequence here instead of stdout")
    sp.add_argument("--net", metavar="PATH", help="net SVG")
    sp.add_argument("--graph", metavar="PATH", help="planar graph SVG")
    sp.add_argument("--obj", metavar="PATH", help="OBJ of the intermediate state")
    sp.add_argument("--step", type=int, help="step for --obj (default: last)")
    sp.add_argument("--manifest", metavar="PATH", help="write a replayable run manifest")
    sp.set_defaults(func=cmd_peel)

    sp = sub.add_parser("replay", help="repeat a peel run from its manifest")
    sp.add_argument("manifest")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("classify", help="classify peelability over all start pairs")
    sp.add_argument("scope", help="'all', a family, or one solid")
    peel_opts(sp)
    sp.add_argument("--patterns", action="store_true", help="also print net pattern classes")
    sp.add_argument("--expect", choices=("table1",), help="compare with the reference verdict table")
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("graph-analysis", help="Hamiltonian paths of skeletons")
    sp.add_argument("scope", help="'all', a family, or one solid")
    sp.add_argument("--expect", choices=("table1",))
    sp.add_argument("--budget", type=int, default=graphs.DEFAULT_BUDGET)
    sp.add_argument("--json", metavar="PATH")
    sp.set_defaults(func=cmd_graph_analysis)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except catalog.UnknownSolidError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN_SOLID
    except (NotAdjacentError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PAIR
    except (PolyhedronError, catalog.OFFParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
