"""Command-line entry point: ``spectre {diagram,distance,discriminate,verify}``.

Exit codes: 0 success, 1 property violation, 2 input error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from . import descriptors as D
from .filtration import FiltrationError, degree_filtration, load_filtration
from .graph import GraphError, load_graph
from .metrics import MetricError, diagram_distance
from .spectral import ConvergenceError, SpectrumPolicy

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

KIND_CHOICES = ("ph0", "ph1", "rephine", "spectre", "ls")


class InputError(Exception):
    pass


def _policy(args) -> SpectrumPolicy:
    mode = args.spectrum or "full"
    try:
        return SpectrumPolicy(mode=mode, threshold=args.partial_threshold,
                              fraction=args.sched_fraction, inner=args.sched_inner,
                              seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _filtration_for(source: str):
    """``file:<path>`` gives a color spec; ``degree-forman`` the structural filtration."""
    if source == bench.DEGREE_FORMAN:
        return bench.DEGREE_FORMAN
    if source.startswith("file:"):
        return load_filtration(source[5:])
    raise InputError(f"--filtration must be 'file:<path>' or 'degree-forman', got {source!r}")


def _diagram(kind: str, g, filt, policy) -> D.Diagram:
    f = degree_filtration(g) if filt == bench.DEGREE_FORMAN else filt
    if kind in ("ph0", "ph1"):
        d = D.compute_ph_diagram(g, f)
        return D.Diagram(D.PH, d.dim0 if kind == "ph0" else (), d.dim1 if kind == "ph1" else (),
                         meta=d.meta)
    return D.compute({"rephine": D.REPHINE, "spectre": D.SPECTRE, "ls": D.LS}[kind], g, f, policy)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_diagram(args) -> int:
    g = load_graph(args.graph)
    d = _diagram(args.kind, g, _filtration_for(args.filtration), _policy(args))
    _emit(D.diagram_to_csv(d) if args.format == "csv" else D.diagram_to_json(d), args.out)
    return EXIT_OK


def cmd_distance(args) -> int:
    a = D.load_diagram(args.a)
    b = D.load_diagram(args.b)
    res = diagram_distance(a, b)
    value = "inf" if res.value == float("inf") else res.value
    matching = res.matching(len(a.dim0))
    if args.format == "csv":
        lines = ["i,j"] + [f"{i},{j}" for i, j in matching]
        text = f"# value={value}\n" + "\n".join(lines)
    else:
        text = json.dumps({"value": value, "matching": matching}, separators=(",", ":"))
    _emit(text, args.out)
    return EXIT_OK


def _collect_graph_paths(paths) -> list[Path]:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.glob("*.json")))
        else:
            out.append(p)
    if len(out) < 2:
        raise InputError("discriminate needs at least two graphs")
    return out


def cmd_discriminate(args) -> int:
    paths = _collect_graph_paths(args.graphs)
    graphs = [load_graph(p) for p in paths]
    names = [p.stem for p in paths]
    filt = _filtration_for(args.filtration)
    kind = args.kind
    if kind in ("ph0", "ph1"):
        diagrams = [_diagram(kind, g, f, None)
                    for g, f in zip(graphs, bench.corpus_filtrations(graphs, filt))]
        rep = bench.discriminate(graphs, kind, diagrams=diagrams, tol=args.tol)
    else:
        kname = {"rephine": D.REPHINE, "spectre": D.SPECTRE, "ls": D.LS}[kind]
        rep = bench.discriminate(graphs, kname, filt, tol=args.tol, policy=_policy(args),
                                 name=args.corpus_name)
    if args.format == "csv":
        text = rep.to_csv(names)
    else:
        doc = rep.summary()
        doc["pairs_detail"] = [[names[i], names[j], bool(s)] for i, j, s in rep.verdicts]
        text = bench.report_json(doc)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kw = {}
    if args.suite == "stability":
        kw["descriptor"] = {"rephine": D.REPHINE, "spectre": D.SPECTRE}[args.descriptor]
    count = args.count if args.count is not None else 100
    res = bench.run_suite(args.suite, count, args.seed, **kw)
    _emit(bench.report_json(res.to_dict()), args.out)
    if not res.passed:
        replay_dir = Path(args.replay_dir or ".")
        replay_dir.mkdir(parents=True, exist_ok=True)
        target = replay_dir / f"replay-{res.suite}-seed{args.seed}.json"
        target.write_text(bench.report_json(res.failures) + "\n", encoding="utf-8")
        print(f"{res.suite}: {len(res.failures)} of {count} instances failed; replay: {target}",
              file=sys.stderr)
        return EXIT_VIOLATION
    print(f"{res.suite}: all {count} instances passed", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spectrum", choices=("full", "partial", "scheduled"), default=None,
                        help="eigenvalue policy (default: full)")
    common.add_argument("--sched-fraction", type=float, default=0.33)
    common.add_argument("--sched-inner", choices=("full", "partial"), default="full")
    common.add_argument("--partial-threshold", type=int, default=9)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="spectre", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diagram", parents=[common], help="compute a canonical diagram")
    d.add_argument("graph")
    d.add_argument("--kind", choices=KIND_CHOICES, default="spectre")
    d.add_argument("--filtration", required=True, help="file:<path> or degree-forman")
    d.set_defaults(func=cmd_diagram)

    t = sub.add_parser("distance", parents=[common], help="bottleneck distance of two diagrams")
    t.add_argument("a")
    t.add_argument("b")
    t.set_defaults(func=cmd_distance)

    c = sub.add_parser("discriminate", parents=[common], help="pairwise separation over a corpus")
    c.add_argument("graphs", nargs="+", help="graph JSON files or directories")
    c.add_argument("--kind", choices=KIND_CHOICES, default="spectre")
    c.add_argument("--filtration", default=bench.DEGREE_FORMAN)
    c.add_argument("--corpus-name", default="corpus")
    c.set_defaults(func=cmd_discriminate)

    v = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    v.add_argument("suite", choices=sorted(bench.SUITES))
    v.add_argument("--count", type=int, default=None)
    v.add_argument("--descriptor", choices=("rephine", "spectre"), default="rephine",
                   help="descriptor for the stability suite")
    v.add_argument("--replay-dir", default=None, help="where failing instances are written")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, GraphError, FiltrationError, D.DescriptorError, MetricError,
            OSError, UnicodeDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
