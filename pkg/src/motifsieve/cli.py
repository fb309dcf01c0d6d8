"""Command-line interface: decide, extract, optimum, verify, gen, bench.

Exit status: 0 = YES, 1 = NO, 2 = usage or input error, 3 = budget or
extraction failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import bench as benchmod
from .gen import GeneratorSpec, InfeasibleSpec, generate, write_witnesses
from .graph import (
    GraphFormatError,
    TemporalGraph,
    TemporalPath,
    load_delays,
    load_graph,
    write_colors,
    write_graph,
)
from .oracle import OracleBudget
from .query import MotifQuery
from .sieve import EDGE_MODELS, MemoryCapExceeded, SieveConfig
from .solvers import (
    EC_PATHMOTIF,
    EC_TEMPPATH,
    KTEMPPATH,
    PROBLEMS,
    RAINBOWPATH,
    SD_COLORFULPATH,
    VC_COLORFULPATH,
    VC_PATHMOTIF,
    QueryMismatch,
    SolveReport,
    Verdict,
    solve,
    validate_report,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3
THREADS_ENV = "MOTIFSIEVE_THREADS"

log = logging.getLogger("motifsieve")


class UsageError(Exception):
    """Bad flag value; the message names the flag."""


@dataclass
class RunRecord:
    command: list[str]
    problem: str
    query: dict
    graph: dict
    config: dict
    decision: str
    optimum_ts: int | None = None
    witness: list | None = None
    flagged: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    peak_words: int = 0
    peak_bytes: int = 0
    fn_bound: float = 0.0
    checksum: str = "0x0"
    oracle_calls: int = 0
    notes: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), default=str)

    def to_text(self) -> str:
        lines = [f"problem: {self.problem}", f"decision: {self.decision}"]
        lines.append("graph: " + " ".join(f"{k}={v}" for k, v in self.graph.items()))
        if self.optimum_ts is not None:
            lines.append(f"optimum_ts: {self.optimum_ts}")
        if self.witness is not None:
            lines.append("witness: " + " ".join(f"({u},{v},{t})" for u, v, t in self.witness))
        if self.flagged:
            shown = self.flagged[:20]
            more = f" ... (+{len(self.flagged) - 20})" if len(self.flagged) > 20 else ""
            lines.append("flagged: " + " ".join(map(str, shown)) + more)
        lines.append("timings: " + " ".join(f"{k}={v:.4f}s" for k, v in self.timings.items()))
        lines.append(f"peak_memory: {self.peak_words} words ({self.peak_bytes} bytes)")
        lines.append(f"fn_bound: {self.fn_bound:.3g}")
        return "\n".join(lines)


# ------------------------------------------------------------------ parsing


def _int_list(text: str, flag: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise UsageError(f"{flag}: empty list")
    return vals


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--graph", required=True, help="edge file: 'u v ts [transit]' per line")
    p.add_argument("--colors", help="color file: 'u c' per line")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--motif", help='color multiset, e.g. "1,1,2,3"')
    p.add_argument("--order", help="ordered colors for vc-* problems")
    p.add_argument("--times", help="prescribed timestamps for ec-* problems")
    p.add_argument("--k", type=int, help="path size for ktemppath/rainbowpath, interior size for sd-colorfulpath")
    p.add_argument("--source", help="source vertex label (sd-colorfulpath)")
    p.add_argument("--dest", help="destination vertex label (sd-colorfulpath)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field-bits", type=int, default=64, choices=(8, 16, 32, 64))
    p.add_argument("--lanes", type=int, default=8, help="lane width W (power of two)")
    p.add_argument("--threads", type=int, help=f"worker count (default: ${THREADS_ENV} or 1)")
    p.add_argument("--preprocess", default="both", choices=("none", "colors", "static", "both"))
    p.add_argument("--extraction", default="localized", choices=("localized", "self-reducible"))
    p.add_argument("--delays", help="per-vertex delay file: 'u delta' per line")
    p.add_argument("--edge-model", choices=EDGE_MODELS, help="timing model (default: instant, or "
                   "transition+delay when --delays is given)")
    p.add_argument("--wildcards-max", type=int, help="allow path sizes up to this bound (pathmotif)")
    p.add_argument("--memory-cap", type=int, help="field-word ceiling for one sieve evaluation")
    p.add_argument("--budget-seconds", type=float, help="wall-clock ceiling for extraction search")
    p.add_argument("--format", default="text", choices=("text", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motifsieve", description="Colored temporal path search by algebraic sieving.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name, text in (("decide", "decide whether a match exists"),
                       ("extract", "decide and return a witness path"),
                       ("optimum", "smallest max-timestamp admitting a match")):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        if name == "extract":
            p.add_argument("--optimize", action="store_true", help="extract a witness at the optimum timestamp")

    p = sub.add_parser("verify", help="check a witness against the graph and query")
    _add_common(p)
    p.add_argument("--witness", required=True, help="JSON run record or witness list ('-' for stdin)")

    p = sub.add_parser("gen", help="generate a synthetic instance")
    p.add_argument("--family", default="regular", choices=("regular", "powerlaw"))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=20)
    p.add_argument("--D", type=float, default=20.0)
    p.add_argument("--w", type=int, default=100)
    p.add_argument("--alpha", type=float, default=-1.0)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--colors-range", type=int, default=5)
    p.add_argument("--plant", type=int, default=0)
    p.add_argument("--plant-motif")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--out", required=True, help="output prefix; writes PREFIX.graph, PREFIX.colors, PREFIX.planted")

    p = sub.add_parser("bench", help="run a benchmark suite, CSV on stdout")
    p.add_argument("--suite", required=True, choices=benchmod.SUITES)
    p.add_argument("--sizes", help="points of the swept parameter (m, k, t, d or n by suite)")
    p.add_argument("--family", default="regular", choices=("regular", "powerlaw"))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=20)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--alpha", type=float, default=-1.0)
    p.add_argument("--w", type=int, default=100)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lanes", type=int, default=8)
    p.add_argument("--threads", type=int)
    p.add_argument("--plant", type=int, default=10)
    p.add_argument("--baseline-factor", type=float, default=10.0,
                   help="baseline ceiling as a multiple of the algebraic extraction time")
    p.add_argument("--baseline-seconds", type=float, help="fixed baseline ceiling (overrides the factor)")
    p.add_argument("--no-aggregate", action="store_true", help="omit the per-point aggregate rows")
    return parser


_DEFAULT_SIZES = {
    "edges": "1000,10000,100000",
    "k": "4,5,6,7,8,9,10",
    "timestamps": "25,50,100,200",
    "degree": "5,10,20,40",
    "baseline": "100,1000,10000",
    "memory": "100,1000,10000",
}


def _workers(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"${THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def make_query(args) -> MotifQuery:
    prob = args.problem
    if args.k is not None and args.k < 1:
        raise UsageError("--k must be >= 1")
    if prob in (KTEMPPATH, RAINBOWPATH, SD_COLORFULPATH):
        if args.k is None:
            raise UsageError(f"--k is required for {prob}")
        return MotifQuery.size(args.k)
    if prob in (VC_PATHMOTIF, VC_COLORFULPATH):
        text = args.order or args.motif
        if not text:
            raise UsageError(f"--order is required for {prob}")
        return MotifQuery.ordered(_int_list(text, "--order"))
    if prob in (EC_TEMPPATH, EC_PATHMOTIF):
        if not args.times:
            raise UsageError(f"--times is required for {prob}")
        times = _int_list(args.times, "--times")
        if prob == EC_PATHMOTIF:
            if not args.motif:
                raise UsageError("--motif is required for ec-pathmotif")
            colors = _int_list(args.motif, "--motif")
            if len(colors) != len(times) + 1:
                raise UsageError("--motif must have one more entry than --times")
            try:
                return MotifQuery.edge_constrained(times, colors)
            except ValueError as exc:
                raise UsageError(f"--times: {exc}") from None
        try:
            return MotifQuery.edge_constrained(times)
        except ValueError as exc:
            raise UsageError(f"--times: {exc}") from None
    if not args.motif:
        raise UsageError(f"--motif is required for {prob}")
    colors = _int_list(args.motif, "--motif")
    if any(c < 1 for c in colors):
        raise UsageError("--motif colors must be >= 1")
    return MotifQuery.colors(colors)


def _query_dict(q: MotifQuery) -> dict:
    return {"kind": q.kind, "k": q.k, "multiset": [list(x) for x in q.multiset],
            "order": list(q.order) if q.order else None, "times": list(q.times) if q.times else None}


def _label_index(g: TemporalGraph) -> dict[str, int]:
    return {str(lab): i for i, lab in enumerate(g.labels or range(g.n))}


def _vertex(g: TemporalGraph, label, flag: str) -> int | None:
    if label is None:
        return None
    idx = _label_index(g)
    if str(label) not in idx:
        raise UsageError(f"{flag}: unknown vertex {label!r}")
    return idx[str(label)]


def _load(args):
    with open(args.graph) as fh:
        edge_lines = fh.read().splitlines()
    color_lines = None
    if args.colors:
        with open(args.colors) as fh:
            color_lines = fh.read().splitlines()
    g, coloring = load_graph(edge_lines, color_lines, directed=args.directed)
    if args.delays:
        with open(args.delays) as fh:
            g = load_delays(fh.read().splitlines(), g)
    return g, coloring


def _config(args) -> SieveConfig:
    model = args.edge_model or ("transition+delay" if args.delays else "instant")
    if args.lanes < 1 or args.lanes & (args.lanes - 1):
        raise UsageError("--lanes must be a power of two")
    return SieveConfig(seed=args.seed, bits=args.field_bits, lanes=args.lanes, workers=_workers(args),
                       edge_model=model, memory_cap=args.memory_cap)


def _record(args, g: TemporalGraph, query: MotifQuery, config: SieveConfig, rep: SolveReport) -> RunRecord:
    lab = g.label
    witness = None
    if rep.witness is not None:
        witness = [[lab(u), lab(v), t] for u, v, t in rep.witness.edges]
        if not witness:
            witness = [[lab(rep.witness.vertices[0])]]
    return RunRecord(
        command=sys.argv[:],
        problem=args.problem,
        query=_query_dict(query),
        graph={"n": g.n, "m": g.m, "t": g.t, "directed": g.directed},
        config={"seed": config.seed, "bits": config.bits, "lanes": config.lanes, "workers": config.workers,
                "preprocess": args.preprocess, "extraction": args.extraction, "edge_model": config.edge_model},
        decision=rep.decision.value,
        optimum_ts=rep.optimum_ts,
        witness=witness,
        flagged=[lab(u) for u in rep.flagged],
        timings={k: max(0.0, float(v)) for k, v in rep.timings.items()},
        peak_words=rep.peak_words,
        peak_bytes=8 * rep.peak_words,
        fn_bound=rep.fn_bound,
        checksum=hex(rep.checksum),
        oracle_calls=rep.oracle_calls,
        notes={k: v for k, v in rep.notes.items() if k not in ("query",)},
    )


def _emit(args, text_or_record) -> None:
    if isinstance(text_or_record, RunRecord):
        out = text_or_record.to_json() if args.format == "json" else text_or_record.to_text()
    else:
        out = text_or_record
    sys.stdout.write(out + "\n")


def cmd_solve(args) -> int:
    query = make_query(args)
    config = _config(args)
    g, coloring = _load(args)
    s = _vertex(g, args.source, "--source")
    d = _vertex(g, args.dest, "--dest")
    if args.problem == SD_COLORFULPATH and (s is None or d is None):
        raise UsageError("--source and --dest are required for sd-colorfulpath")
    if args.wildcards_max is not None and args.wildcards_max < query.k:
        raise UsageError("--wildcards-max must be >= the query size")
    budget = OracleBudget(seconds=args.budget_seconds) if args.budget_seconds else OracleBudget()
    start = time.perf_counter()
    rep = solve(
        args.problem, g, coloring, query, config,
        optimize=args.cmd == "optimum" or getattr(args, "optimize", False),
        extract=args.cmd == "extract",
        extraction=args.extraction,
        preprocess_level=args.preprocess,
        source=s, dest=d,
        wildcards_max=args.wildcards_max,
        budget=budget,
    )
    rep.timings["total"] = time.perf_counter() - start
    if rep.witness is not None:
        ok = validate_report(args.problem, g, coloring, query, rep, config.edge_model, s, d)
        if not ok:
            rep.notes["witness_invalid"] = ok.clause
            rep.extraction_failed = True
    _emit(args, _record(args, g, query, config, rep))
    if rep.decision is Verdict.INCONCLUSIVE or rep.extraction_failed:
        return EXIT_FAIL
    return EXIT_YES if rep.yes else EXIT_NO


def _read_witness(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    data = json.loads(text)
    record = data if isinstance(data, dict) else None
    witness = data.get("witness") if record else data
    return record, witness


def cmd_verify(args) -> int:
    record, witness = _read_witness(args.witness)
    query = make_query(args)
    g, coloring = _load(args)
    if not witness:
        raise UsageError("--witness: no witness in input")
    idx = _label_index(g)
    try:
        if len(witness) == 1 and len(witness[0]) == 1:
            path = TemporalPath.single(idx[str(witness[0][0])])
        else:
            path = TemporalPath.from_edges([(idx[str(u)], idx[str(v)], int(t)) for u, v, t in witness])
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"--witness: malformed or unknown vertex ({exc})") from None
    s = _vertex(g, args.source, "--source")
    d = _vertex(g, args.dest, "--dest")
    rep = SolveReport(args.problem, Verdict.YES, witness=path,
                      notes={"colors": (record or {}).get("notes", {}).get("colors")})
    if args.problem == RAINBOWPATH and rep.notes["colors"] is None:
        rep.notes["colors"] = sorted({int(coloring.base[v]) for v in path.vertices})
    edge_model = args.edge_model or ("transition+delay" if args.delays else "instant")
    verdict = validate_report(args.problem, g, coloring, query, rep, edge_model, s, d)
    sys.stdout.write(("valid" if verdict else f"invalid: {verdict.clause}") + "\n")
    return EXIT_YES if verdict else EXIT_NO


def cmd_gen(args) -> int:
    motif = tuple(_int_list(args.plant_motif, "--plant-motif")) if args.plant_motif else None
    if args.plant and motif is None:
        raise UsageError("--plant needs --plant-motif")
    try:
        spec = GeneratorSpec(family=args.family, n=args.n, d=args.d, D=args.D, w=args.w, alpha=args.alpha,
                             t=args.t, colors=args.colors_range, seed=args.seed, directed=args.directed,
                             plant=args.plant, plant_motif=motif)
        inst = generate(spec)
    except InfeasibleSpec as exc:
        raise UsageError(f"infeasible generator spec: {exc}") from None
    with open(args.out + ".graph", "w") as fh:
        write_graph(inst.graph, fh)
    with open(args.out + ".colors", "w") as fh:
        write_colors(inst.graph, inst.coloring, fh)
    if inst.planted:
        with open(args.out + ".planted", "w") as fh:
            write_witnesses(inst.planted, fh)
    sys.stderr.write(f"wrote {args.out}.graph (n={inst.graph.n}, m={inst.graph.m}, t={inst.graph.t})\n")
    return 0


def cmd_bench(args) -> int:
    sizes = tuple(_int_list(args.sizes or _DEFAULT_SIZES[args.suite], "--sizes"))
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    params = benchmod.BenchParams(
        suite=args.suite, sizes=sizes, family=args.family, n=args.n, d=args.d, t=args.t, k=args.k,
        alpha=args.alpha, w=args.w, repeats=args.repeats, seed=args.seed, lanes=args.lanes,
        workers=_workers(args), plant=args.plant, baseline_factor=args.baseline_factor,
        baseline_seconds=args.baseline_seconds,
    )
    rows = benchmod.run_suite(params, progress=lambda r: log.info("bench row %s", r))
    if not args.no_aggregate:
        rows = rows + benchmod.aggregate(rows)
    benchmod.to_csv(rows, sys.stdout)
    return 0


COMMANDS = {"decide": cmd_solve, "extract": cmd_solve, "optimum": cmd_solve,
            "verify": cmd_verify, "gen": cmd_gen, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"motifsieve {args.cmd}: error: {exc}\n")
    except (GraphFormatError, QueryMismatch, InfeasibleSpec) as exc:
        parser.exit(EXIT_USAGE, f"motifsieve {args.cmd}: error: {exc}\n")
    except FileNotFoundError as exc:
        parser.exit(EXIT_USAGE, f"motifsieve {args.cmd}: error: cannot open {exc.filename}\n")
    except MemoryCapExceeded as exc:
        parser.exit(EXIT_FAIL, f"motifsieve {args.cmd}: error: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
