"""Command-line front end.

    nospam <filePath> <samples> <switching attempts> [options]
    nospam catalog [--output PATH]

The main command reads a directed edge list, runs the ensemble
analysis, and writes one TSV row of 30 Z-scores per node.  Options add
side outputs (raw moments, global class scores) and control seeding,
sampling mode and worker count.  The catalog subcommand dumps the
pattern class tables for documentation or regression snapshots.

Exit codes: 0 success, 1 bad arguments, 2 input parse error, 3 I/O
failure.
"""
from __future__ import annotations

import argparse
import secrets
import sys
import time
from pathlib import Path
from typing import Sequence, TextIO

from .catalog import write_catalog_tsv
from .graph import Graph, IngestReport, ParseError, load_edge_list
from .mining import AnalysisResult, EnsembleResult, Flag, ZScoreTable, analyze
from .randomize import RngStream, SwitchStats


def _format_cell(value: float, flag: int) -> str:
    if flag == Flag.ZERO_SIGMA_NONZERO_DELTA:
        return "+inf" if value > 0 else "-inf"
    v = float(value)
    if v == 0.0:
        v = 0.0
    return f"{v:.6f}"


def write_zscores(table: ZScoreTable, labels: Sequence[int], sink: TextIO) -> None:
    """Z-score TSV: header node, Z01..Z30; one row per node, sorted by
    external label; finite cells with six decimals, degenerate cells as
    0.000000 or +inf/-inf."""
    m = table.values.shape[1]
    sink.write("node\t" + "\t".join(f"Z{k:02d}" for k in range(1, m + 1)) + "\n")
    values = table.values
    flags = table.flags
    for v in sorted(range(len(labels)), key=labels.__getitem__):
        cells = [_format_cell(values[v, k], flags[v, k]) for k in range(m)]
        sink.write(str(labels[v]) + "\t" + "\t".join(cells) + "\n")


def write_raw_counts(result: EnsembleResult, labels: Sequence[int], sink: TextIO) -> None:
    """Long-format TSV of the Z-score ingredients, one row per
    (node, pattern) cell."""
    sink.write("node\tpattern\toriginal\tmean\tsigma\n")
    original = result.original
    mean = result.mean
    sigma = result.sigma
    m = original.shape[1]
    for v in sorted(range(len(labels)), key=labels.__getitem__):
        for k in range(m):
            sink.write(
                f"{labels[v]}\t{k + 1}\t{original[v, k]}"
                f"\t{mean[v, k]:.6f}\t{sigma[v, k]:.6f}\n"
            )


def write_global(result: EnsembleResult, sink: TextIO) -> None:
    """TSV of the 13 unmarked class scores."""
    sink.write("class\toriginal\tmean\tsigma\tz\n")
    for k in range(len(result.original)):
        z = _format_cell(result.table.values[k], result.table.flags[k])
        sink.write(
            f"{k + 1}\t{result.original[k]}\t{result.mean[k]:.6f}"
            f"\t{result.sigma[k]:.6f}\t{z}\n"
        )


def _default_output(input_path: str) -> str:
    return str(Path(input_path).with_suffix("")) + ".nospam.tsv"


def _sibling_output(base: str, tag: str) -> str:
    if base.endswith(".tsv"):
        return base[: -len(".tsv")] + f".{tag}.tsv"
    return base + f".{tag}.tsv"


class _ExitCodeParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this front end reserves 2 for
    input parse errors, so remap usage problems to 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    parser = _ExitCodeParser(
        prog="nospam",
        description="Node-specific triad pattern Z-scores for a directed network.",
    )
    parser.add_argument("file_path", metavar="filePath", help="edge-list input file")
    parser.add_argument("samples", type=int, help="number of randomized graphs (>= 2)")
    parser.add_argument(
        "attempts", type=int, help="switching attempts per randomized graph (>= 0)"
    )
    parser.add_argument(
        "--seed", type=int, default=None,
        help="RNG seed; defaults to OS entropy (shown with --verbose)",
    )
    parser.add_argument(
        "--output", "-o", default=None, metavar="PATH",
        help="Z-score TSV path; '-' for stdout (default: <input>.nospam.tsv)",
    )
    parser.add_argument(
        "--emit-raw-counts", action="store_true",
        help="also write per-cell original/mean/sigma to <output>.raw.tsv",
    )
    parser.add_argument(
        "--global", dest="global_mode", action="store_true",
        help="also write 13 graph-level class scores to <output>.global.tsv",
    )
    parser.add_argument(
        "--chained", action="store_true",
        help="feed each sample's graph into the next randomization instead of "
        "restarting from the original (sequential, correlated samples)",
    )
    parser.add_argument(
        "--threads", type=int, default=None, metavar="N",
        help="worker processes for the ensemble (default: NOSPAM_THREADS or CPU count)",
    )
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="print run diagnostics to stderr")
    return parser


def _fail(message: str) -> None:
    print(f"nospam: error: {message}", file=sys.stderr)


def _verbose_report(g: Graph, report: IngestReport, seed: int) -> None:
    err = sys.stderr
    print(f"seed: {seed}", file=err)
    print(
        f"graph: {g.num_nodes} nodes, {g.num_uni_edges} unidirectional links, "
        f"{g.num_mutual_dyads} mutual dyads",
        file=err,
    )
    for warning in report.warnings():
        print(f"input: {warning}", file=err)
    if report.extra_field_lines:
        print(f"input: ignored extra fields on {report.extra_field_lines} line(s)", file=err)


def _verbose_stats(stats: SwitchStats, elapsed: float) -> None:
    err = sys.stderr
    total = stats.attempts or 1
    print(
        f"switching: {stats.attempts} attempts, {stats.switches} switches "
        f"({100.0 * stats.switches / total:.1f}%): "
        f"uni {stats.uni_pair_switches}, mutual {stats.mutual_pair_switches}, "
        f"loop {stats.loop_switches}",
        file=err,
    )
    print(
        f"rejected: same slot {stats.rejected_self_pick}, "
        f"shared node {stats.rejected_shared_node}, "
        f"existing link {stats.rejected_existing_link}, "
        f"no loop {stats.rejected_no_loop}, "
        f"no links {stats.rejected_no_links}",
        file=err,
    )
    print(f"elapsed: {elapsed:.1f} s", file=err)


def _write_sink(path: str, writer) -> int:
    try:
        if path == "-":
            writer(sys.stdout)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                writer(fh)
    except OSError as exc:
        _fail(f"cannot write {path}: {exc.strerror or exc}")
        return 3
    return 0


def _run(args: argparse.Namespace) -> int:
    if args.samples < 2:
        _fail("samples must be >= 2")
        return 1
    if args.attempts < 0:
        _fail("attempts must be >= 0")
        return 1
    if args.threads is not None and args.threads < 1:
        _fail("threads must be >= 1")
        return 1

    try:
        g, report = load_edge_list(args.file_path)
    except ParseError as exc:
        _fail(f"{args.file_path}: {exc}")
        return 2
    except UnicodeDecodeError:
        _fail(f"{args.file_path}: not a text file")
        return 2
    except OSError as exc:
        _fail(f"cannot read {args.file_path}: {exc.strerror or exc}")
        return 3

    seed = args.seed if args.seed is not None else secrets.randbits(63)
    if args.verbose:
        _verbose_report(g, report, seed)
    if args.attempts < g.num_directed_edges:
        print(
            f"nospam: warning: attempts ({args.attempts}) is below the number of "
            f"directed links ({g.num_directed_edges}); the ensemble may be "
            f"insufficiently randomized",
            file=sys.stderr,
        )

    started = time.perf_counter()
    try:
        result = analyze(
            g,
            args.samples,
            args.attempts,
            RngStream(seed),
            chained=args.chained,
            workers=args.threads,
        )
    except ValueError as exc:
        _fail(str(exc))
        return 1
    elapsed = time.perf_counter() - started

    out_path = args.output if args.output else _default_output(args.file_path)
    code = _write_sink(out_path, lambda fh: write_zscores(result.node.table, g.labels, fh))
    if code:
        return code

    side_base = out_path if out_path != "-" else _default_output(args.file_path)
    if args.emit_raw_counts:
        raw_path = _sibling_output(side_base, "raw")
        code = _write_sink(raw_path, lambda fh: write_raw_counts(result.node, g.labels, fh))
        if code:
            return code
    if args.global_mode:
        global_path = _sibling_output(side_base, "global")
        code = _write_sink(global_path, lambda fh: write_global(result.classes, fh))
        if code:
            return code

    if args.verbose:
        _verbose_stats(result.node.stats, elapsed)
    return 0


def _run_catalog(argv: list[str]) -> int:
    parser = _ExitCodeParser(prog="nospam catalog",
                             description="Dump the triad pattern class tables as TSV.")
    parser.add_argument("--output", "-o", default="-", metavar="PATH",
                        help="destination path; '-' for stdout (default)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return _write_sink(args.output, write_catalog_tsv)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if argv[:1] == ["catalog"]:
        return _run_catalog(argv[1:])
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
