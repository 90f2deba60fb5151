"""Command-line entry point: ``birkhoff <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
import uuid
from pathlib import Path
from typing import List, Optional, Sequence

from . import assembly
from .assembly import AssemblyError, ValueSet, assemble, format_result, parse_result, required_value_count
from .ct import composition_count
from .dist.coordinator import DEFAULT_HEARTBEAT, DEFAULT_LEASE_TIMEOUT, Coordinator
from .dist.manifest import Manifest, generate_manifest, read_manifest, write_manifest
from .dist.protocol import parse_address
from .dist.store import aggregate, merge_results, read_results
from .dist.worker import CoordinatorUnreachable, lease_holders, run_local_worker, run_tcp_worker
from .errors import EXIT_FAILURE, EXIT_INCOMPLETE, EXIT_INTEGRITY, EXIT_OK, EXIT_USAGE, IncompleteError, IntegrityError
from .exact import format_int, format_rational, parse_rational
from .golden import GOLDEN_FILES, golden_volume, verify_golden

log = logging.getLogger("birkhoff")

LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def int_list(text: str) -> List[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("dilations must be integers >= 1")
    return values


def default_engine(n: int) -> str:
    return "dp" if n <= 4 else "ct"


def write_out(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="ascii")


def composition_terms(n: int, ts: Sequence[int]) -> int:
    return len(ts) * composition_count(n)


# -- subcommands --------------------------------------------------------------


def cmd_count(args) -> int:
    engine = args.engine or default_engine(args.n)
    if (args.t is None) == (args.t_max is None):
        raise UsageError("count needs exactly one of --t or --t-max")
    ts = [args.t] if args.t is not None else list(range(args.t_max + 1))
    values = [assembly.count_with(engine, args.n, t) for t in ts]
    for t, v in zip(ts, values):
        print(format_int(v) if args.t is not None else f"{t} {format_int(v)}")
    write_out(args.out, "".join(f"n={args.n};t={t};value={format_int(v)}\n" for t, v in zip(ts, values)))
    return EXIT_OK


def _pipeline(args):
    engine = args.engine or default_engine(args.n)
    if args.n < 2:
        raise UsageError("the Ehrhart pipeline needs --n >= 2")
    start = time.perf_counter()
    res = assembly.ehrhart_polynomial(args.n, engine, jobs=args.jobs)
    assembly.structural_checks(res)
    elapsed = time.perf_counter() - start
    ts = range(1, required_value_count(args.n) + 1)
    tasks = composition_terms(args.n, ts) if engine == "ct" else 0
    return res, tasks, elapsed


def cmd_ehrhart(args) -> int:
    res, tasks, elapsed = _pipeline(args)
    print(f"H_{res.n}(t), degree {res.poly.degree}, engine {res.engine}, {elapsed:.3f}s")
    for k, c in enumerate(res.poly.coeffs):
        print(f"  t^{k}: {format_rational(c)}")
    write_out(args.out, format_result(res, tasks))
    return EXIT_OK


def cmd_volume(args) -> int:
    res, tasks, elapsed = _pipeline(args)
    report = assembly.volume_from_polynomial(res)
    print(f"leading={format_rational(report.leading)}")
    print(f"volume={format_rational(report.volume)}")
    print(f"(engine {res.engine}, {elapsed:.3f}s)")
    write_out(args.out, format_result(res, tasks))
    return EXIT_OK


def cmd_tasks(args) -> int:
    ts = args.ts or list(range(1, required_value_count(args.n) + 1))
    manifest = generate_manifest(args.n, ts, args.chunk_size)
    write_manifest(manifest, args.out)
    print(f"wrote {len(manifest.chunks)} chunk(s) for n={args.n}, t={','.join(map(str, ts))} to {args.out}")
    return EXIT_OK


def _assemble_from_totals(manifest: Manifest, totals) -> Optional[str]:
    """Result document when the manifest covers t = 1..T(n), else None."""
    n = manifest.n
    need = range(1, required_value_count(n) + 1)
    values = {t: totals[(n, t)] for t in manifest.ts}
    if not all(t in values for t in need):
        return None
    res = assemble(ValueSet(n, {t: values[t] for t in need}), engine="ct")
    for t, v in values.items():
        if res.poly(t) != v:
            raise assembly.ConsistencyError(f"extra value H({t}) = {v} disagrees with the polynomial")
    assembly.structural_checks(res)
    return format_result(res, composition_terms(n, manifest.ts))


def _report_totals(manifest: Manifest, totals, out: Optional[str]) -> None:
    for (n, t), v in sorted(totals.items()):
        print(f"H_{n}({t}) = {format_int(v)}")
    doc = _assemble_from_totals(manifest, totals)
    if doc is None:
        doc = "".join(f"n={n};t={t};value={format_int(v)}\n" for (n, t), v in sorted(totals.items()))
    else:
        print(doc, end="")
    write_out(out, doc)


def cmd_coordinate(args) -> int:
    manifest = read_manifest(args.manifest)
    host, port = parse_address(args.listen)

    def announce(h, p):
        if args.port_file:
            tmp = Path(args.port_file).with_suffix(".tmp")
            tmp.write_text(f"{h}:{p}\n")
            os.replace(tmp, args.port_file)
        print(f"listening on {h}:{p}", flush=True)

    coord = Coordinator(manifest, args.results, host, port, args.lease_timeout, on_listening=announce,
                        drain_grace=args.drain_grace)
    summary = coord.run()
    print(f"run complete: {summary.describe()}")
    if args.out:
        _report_totals(manifest, aggregate(manifest, read_results(args.results)), args.out)
    return EXIT_OK


def cmd_worker(args) -> int:
    worker_id = args.worker_id or f"{os.uname().nodename}-{os.getpid()}-{uuid.uuid4().hex[:6]}"
    if args.connect:
        host, port = parse_address(args.connect)
        try:
            stats = run_tcp_worker(host, port, worker_id, retries=args.retries, backoff=args.backoff,
                                   heartbeat=args.heartbeat)
        except CoordinatorUnreachable as exc:
            print(f"worker {worker_id}: {exc}", file=sys.stderr)
            return EXIT_FAILURE
    else:
        if not (args.manifest and args.results and args.lock_dir):
            raise UsageError("worker needs --connect, or --manifest, --results and --lock-dir for local mode")
        stats = run_local_worker(read_manifest(args.manifest), args.results, args.lock_dir, worker_id,
                                 lease_timeout=args.lease_timeout, heartbeat=args.heartbeat)
    print(f"worker {worker_id} evaluated {stats.evaluated} chunk(s)")
    return EXIT_OK


def cmd_aggregate(args) -> int:
    manifest = read_manifest(args.manifest)
    totals = aggregate(manifest, read_results(args.results))
    _report_totals(manifest, totals, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not (args.golden or args.result):
        raise UsageError("verify needs --golden with --volume-file, and/or --result")
    status = EXIT_OK
    if args.result:
        res = parse_result(Path(args.result).read_text(encoding="ascii")).to_result()
        checks = assembly.structural_checks(res)
        print(f"structural checks passed: {', '.join(checks)}")
    if args.golden:
        if not args.volume_file:
            raise UsageError("--golden needs --volume-file")
        text = Path(args.volume_file).read_text(encoding="ascii")
        volume = parse_result(text).volume if "=" in text else parse_rational(text)
        golden = golden_volume(args.golden)
        ok = verify_golden(volume, golden.numerator, golden.denominator)
        print(f"{args.golden}: {'match' if ok else 'MISMATCH'} ({format_rational(volume)})")
        if not ok:
            status = EXIT_FAILURE
    return status


def cmd_status(args) -> int:
    try:
        manifest = read_manifest(args.manifest)
        values = merge_results(read_results(args.results))
    except (OSError, ValueError) as exc:
        print(f"cannot read run state: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    total = len(manifest.chunks)
    done = sum(1 for c in manifest.chunks if c.id in values)
    leased = lease_holders(Path(args.lock_dir), args.lease_timeout) if args.lock_dir else 0
    leased = min(leased, total - done)
    print(f"{done}/{total} done, {total - done - leased} pending, {leased} leased, {total - done} remaining")
    return EXIT_OK if done == total else EXIT_INCOMPLETE


# -- parser -------------------------------------------------------------------


def build_parser() -> Parser:
    parser = Parser(prog="birkhoff", description="Exact Ehrhart polynomials and volumes of Birkhoff polytopes.")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    def engine_flags(p):
        p.add_argument("--engine", choices=["dp", "ct", "naive"], help="default: dp for n <= 4, ct otherwise")
        p.add_argument("--jobs", type=positive_int, default=1)
        p.add_argument("--out", help="machine-readable output file")

    p = sub.add_parser("count", help="count lattice points H_n(t)")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--t", type=nonneg_int)
    p.add_argument("--t-max", type=nonneg_int)
    engine_flags(p)
    p.set_defaults(func=cmd_count)

    for name, func, text in (
        ("ehrhart", cmd_ehrhart, "assemble the full Ehrhart polynomial"),
        ("volume", cmd_volume, "leading coefficient and normalized volume"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=positive_int, required=True)
        engine_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("tasks", help="write a task manifest")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--ts", type=int_list, help="comma-separated dilations (default 1..T(n))")
    p.add_argument("--chunk-size", type=positive_int, default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tasks)

    p = sub.add_parser("coordinate", help="serve a manifest to TCP workers")
    p.add_argument("--manifest", required=True)
    p.add_argument("--results", required=True)
    p.add_argument("--listen", default="127.0.0.1:0")
    p.add_argument("--lease-timeout", type=float, default=DEFAULT_LEASE_TIMEOUT)
    p.add_argument("--port-file", help="write the bound host:port here once listening")
    p.add_argument("--drain-grace", type=float, default=5.0, help="seconds to wait for workers to leave")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coordinate)

    p = sub.add_parser("worker", help="evaluate chunks from a coordinator or a shared directory")
    p.add_argument("--connect", help="coordinator host:port")
    p.add_argument("--manifest")
    p.add_argument("--results")
    p.add_argument("--lock-dir")
    p.add_argument("--worker-id")
    p.add_argument("--retries", type=nonneg_int, default=5)
    p.add_argument("--backoff", type=float, default=0.5)
    p.add_argument("--heartbeat", type=float, default=DEFAULT_HEARTBEAT)
    p.add_argument("--lease-timeout", type=float, default=DEFAULT_LEASE_TIMEOUT)
    p.set_defaults(func=cmd_worker)

    p = sub.add_parser("aggregate", help="sum a results log against its manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--results", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("verify", help="structural checks and golden-value comparison")
    p.add_argument("--golden", choices=sorted(GOLDEN_FILES))
    p.add_argument("--volume-file")
    p.add_argument("--result", help="result document to check structurally")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("status", help="read-only progress of a run")
    p.add_argument("--manifest", required=True)
    p.add_argument("--results", required=True)
    p.add_argument("--lock-dir")
    p.add_argument("--lease-timeout", type=float, default=DEFAULT_LEASE_TIMEOUT)
    p.set_defaults(func=cmd_status)
    return parser


def configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("BIRKHOFF_LOG", "error").lower(), logging.ERROR)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"birkhoff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IncompleteError as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except IntegrityError as exc:
        print(f"INTEGRITY FAILURE: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except AssemblyError as exc:
        print(f"INTEGRITY FAILURE: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except FileNotFoundError as exc:
        print(f"birkhoff: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE


if __name__ == "__main__":
    sys.exit(main())
