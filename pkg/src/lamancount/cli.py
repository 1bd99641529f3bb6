"""Command-line front end: ``lamancount {check,count,oracle,generate,bench}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .edgelist import EdgeListError, format_edge_list, parse_edge_list
from .engine import (
    LamanEngine,
    LamanOverflowError,
    NotLamanError,
    PIVOT_STRATEGIES,
    all_pivot_values,
    laman_number_parallel,
)
from .oracle import DEFAULT_PRIME, OracleInconclusiveError, oracle_laman_number
from .rigidity import GENERATE_RANGE, SimpleGraph, generate_laman, is_laman, is_laman_bruteforce

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_NOT_LAMAN = 3
EXIT_OVERFLOW = 4
EXIT_INCONCLUSIVE = 5

BENCH_COLUMNS = ["key", "n_vertices", "n_edges", "laman_number", "elapsed_ms"]

log = logging.getLogger("lamancount")


class CommandError(Exception):
    def __init__(self, message: str, code: int = EXIT_OTHER):
        super().__init__(message)
        self.code = code


def read_graph(path: str) -> SimpleGraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text)


def fingerprint(g: SimpleGraph) -> str:
    return g.key().hex()


class RecordStore:
    """Append-only JSON-lines file of run records keyed by fingerprint."""

    def __init__(self, path: Path):
        self.path = path
        self.known = {}
        if path.exists():
            for lineno, line in enumerate(path.read_text().splitlines(), start=1):
                if not line.strip():
                    continue
                rec = json.loads(line)
                prev = self.known.get(rec["fingerprint"])
                if prev is not None and prev != rec["laman_number"]:
                    raise CommandError(f"{path}:{lineno}: conflicting laman numbers for one fingerprint")
                self.known[rec["fingerprint"]] = rec["laman_number"]

    def get(self, fp: str):
        return self.known.get(fp)

    def append(self, record: dict) -> None:
        prev = self.known.get(record["fingerprint"])
        if prev is not None and prev != record["laman_number"]:
            raise CommandError(
                f"record conflict: stored {prev}, computed {record['laman_number']}"
            )
        with self.path.open("a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
        self.known[record["fingerprint"]] = record["laman_number"]


def _require_laman(g: SimpleGraph) -> None:
    if not is_laman(g):
        raise NotLamanError("input graph is not Laman")


def _stats_line(stats: dict) -> str:
    return "stats: " + " ".join(f"{k}={v}" for k, v in stats.items())


def cmd_check(args, out) -> int:
    g = read_graph(args.graph)
    verdict = is_laman(g)
    if args.bruteforce and is_laman_bruteforce(g) != verdict:
        raise CommandError("pebble game and brute-force check disagree")
    out.write(("Laman" if verdict else "not Laman") + "\n")
    return EXIT_OK


def cmd_count(args, out) -> int:
    g = read_graph(args.graph)
    _require_laman(g)
    store = RecordStore(Path(args.records)) if args.records else None
    fp = fingerprint(g)
    if store is not None and not args.recompute and store.get(fp) is not None:
        out.write(f"{store.get(fp)}\n")
        out.write("stats: reused stored record\n")
        return EXIT_OK
    start = time.perf_counter()
    b = g.to_bigraph()
    if args.pivot_strategy == "all":
        engine = LamanEngine(shortcut=not args.no_shortcut)
        values = all_pivot_values(b, engine)
        distinct = sorted(set(values.values()))
        if len(distinct) != 1:
            detail = ", ".join(f"{p}:{v}" for p, v in values.items())
            raise CommandError(f"pivot disagreement: {detail}")
        value, stats = distinct[0], engine.stats
        extra = f"pivots: {len(values)} checked, all agree\n"
    elif args.jobs > 1:
        value, stats = laman_number_parallel(b, args.jobs, args.pivot_strategy)
        extra = ""
    else:
        engine = LamanEngine(pivot_strategy=args.pivot_strategy, shortcut=not args.no_shortcut)
        value = engine.laman_number(b)
        stats = engine.stats
        extra = ""
    elapsed = time.perf_counter() - start
    stats_dict = stats.as_dict()
    stats_dict["wall_time"] = round(elapsed, 6)
    out.write(f"{value}\n")
    out.write(extra)
    out.write(_stats_line(stats_dict) + "\n")
    if store is not None:
        store.append({
            "fingerprint": fp,
            "n_vertices": len(g.vertices),
            "n_edges": len(g.edges),
            "laman_number": value,
            "stats": stats_dict,
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        })
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    g = read_graph(args.graph)
    _require_laman(g)
    out.write(f"{oracle_laman_number(g, seed=args.seed, prime=args.prime)}\n")
    return EXIT_OK


def cmd_generate(args, out) -> int:
    graphs = generate_laman(args.n)
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            path = target / f"laman_n{args.n}_{i:05d}.txt"
            path.write_text(format_edge_list(g, header=f"key {fingerprint(g)}"))
        out.write(f"wrote {len(graphs)} graphs to {target}\n")
    else:
        for i, g in enumerate(graphs):
            if i:
                out.write("\n")
            out.write(format_edge_list(g, header=f"graph {i} key {fingerprint(g)}"))
    return EXIT_OK


def _bench_one(g: SimpleGraph, engine: LamanEngine | None = None) -> list:
    engine = engine or LamanEngine()
    start = time.perf_counter()
    value = engine.laman_number(g.to_bigraph())
    ms = (time.perf_counter() - start) * 1000
    return [fingerprint(g), len(g.vertices), len(g.edges), value, f"{ms:.3f}"]


def bench_rows(min_vertices: int, max_vertices: int, jobs: int = 1) -> list:
    graphs = [g for n in range(min_vertices, max_vertices + 1) for g in generate_laman(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_bench_one, graphs, chunksize=8))
    engine = LamanEngine()
    return [_bench_one(g, engine) for g in graphs]


def cmd_bench(args, out) -> int:
    lo, hi = GENERATE_RANGE
    if not lo <= args.min_vertices <= args.max_vertices <= hi:
        raise CommandError(f"vertex range must satisfy {lo} <= min <= max <= {hi}")
    rows = bench_rows(args.min_vertices, args.max_vertices, args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        for key, n, m, value, ms in rows:
            out.write(f"n={n} m={m} laman={value} ms={ms} key={key[:16]}\n")
        out.write(f"{len(rows)} graphs\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lamancount", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a graph is Laman")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--bruteforce", action="store_true", help="cross-check with the subset oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="Laman number by the bigraph recursion")
    p.add_argument("graph")
    p.add_argument("--pivot-strategy", choices=PIVOT_STRATEGIES + ("all",), default="default")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--records", help="append-only JSON-lines run record file")
    p.add_argument("--recompute", action="store_true", help="ignore stored records")
    p.add_argument("--no-shortcut", action="store_true", help="disable the early-zero shortcut")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="Laman number by Groebner bases over GF(p)")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="all Laman graphs on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--out", help="directory for one edge-list file per graph")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="count every Laman graph up to a size")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--min-vertices", type=int, default=3)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=err)
    try:
        return args.func(args, out)
    except EdgeListError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except NotLamanError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NOT_LAMAN
    except LamanOverflowError as exc:
        err.write(f"overflow: {exc}\n")
        return EXIT_OVERFLOW
    except OracleInconclusiveError as exc:
        err.write(f"oracle inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except CommandError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
