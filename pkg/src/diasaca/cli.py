"""Command line front end: suffix array of a file with a chosen algorithm.

Byte value 0 is reserved for the sentinel and is rejected in the input.
"""
from __future__ import annotations

import argparse
import struct
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .common import Trace, check_suffix_array, oracle_suffix_sort
from .dataflow import SHARDS_ENV, Context, default_shards
from .dcx import DCStats, dc3, dc7
from .pd import RunStats, pd_discarding, pd_isa, pd_quadrupling, pd_sorting

MAGIC = b"SAF1"
ORACLE_LIMIT = 65536

# exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2  # argparse's own code for malformed flags
EXIT_UNREADABLE = 3
EXIT_ZERO_BYTE = 4
EXIT_UNWRITABLE = 5
EXIT_UNKNOWN_ALGO = 6


def _oracle(t, **_):
    return oracle_suffix_sort(bytes(t))


ALGORITHMS: dict[str, Callable] = {
    "pd-sort": pd_sorting,
    "pd-isa": pd_isa,
    "pd-discard": pd_discarding,
    "pq": pd_quadrupling,
    "dc3": dc3,
    "dc7": dc7,
    "oracle": _oracle,
}
FORMATS = ("text", "binary")


@dataclass(frozen=True)
class RunConfig:
    algorithm: str
    input: Path
    output: Path | None = None  # None: standard output
    format: str = "text"
    shards: int = 1
    check: bool = False
    trace: Path | None = None
    max_bytes: int | None = None

    def __post_init__(self):
        if self.shards < 1:
            raise ValueError(f"shards must be >= 1, got {self.shards}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.max_bytes is not None and self.max_bytes < 0:
            raise ValueError("max_bytes must be >= 0")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def emit_sa(sa: Sequence[int], fmt: str = "text") -> bytes:
    if fmt == "text":
        return "".join(f"{i}\n" for i in sa).encode("ascii")
    if fmt == "binary":
        return MAGIC + struct.pack(f"<Q{len(sa)}Q", len(sa), *sa)
    raise ValueError(f"unknown format {fmt!r}")


def parse_sa(data: bytes, fmt: str = "text") -> list[int]:
    """Inverse of :func:`emit_sa`."""
    if fmt == "text":
        return [int(line) for line in data.decode("ascii").splitlines()]
    if fmt == "binary":
        if data[:4] != MAGIC or len(data) < 12:
            raise ValueError("not an SAF1 file")
        (n,) = struct.unpack_from("<Q", data, 4)
        if len(data) != 12 + 8 * n:
            raise ValueError(f"SAF1 header says {n} entries, payload has {(len(data) - 12) / 8}")
        return list(struct.unpack_from(f"<{n}Q", data, 12))
    raise ValueError(f"unknown format {fmt!r}")


def _read_input(cfg: RunConfig) -> bytes:
    try:
        with open(cfg.input, "rb") as fh:
            data = fh.read() if cfg.max_bytes is None else fh.read(cfg.max_bytes)
    except OSError as e:
        raise CliError(EXIT_UNREADABLE, f"cannot read input {cfg.input}: {e.strerror or e}") from None
    pos = data.find(b"\0")
    if pos >= 0:
        raise CliError(EXIT_ZERO_BYTE, f"input contains byte 0 at offset {pos}; 0 is reserved for the sentinel")
    return data


def run(cfg: RunConfig, stderr=None) -> int:
    """Run one configuration; returns the exit status."""
    stderr = stderr or sys.stderr
    try:
        return _run(cfg, stderr)
    except CliError as e:
        print(f"error: {e}", file=stderr)
        return e.code


def _run(cfg: RunConfig, stderr) -> int:
    algo = ALGORITHMS.get(cfg.algorithm)
    if algo is None:
        raise CliError(EXIT_UNKNOWN_ALGO, f"unknown algorithm {cfg.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    data = _read_input(cfg)
    ctx = Context(num_shards=cfg.shards)
    trace = Trace() if cfg.trace is not None else None
    stats = DCStats() if cfg.algorithm.startswith("dc") else RunStats()

    start = time.perf_counter()
    sa = algo(data, ctx=ctx, trace=trace, stats=stats)
    elapsed = time.perf_counter() - start

    payload = emit_sa(sa, cfg.format)
    try:
        if cfg.output is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        else:
            Path(cfg.output).write_bytes(payload)
        if trace is not None:
            with open(cfg.trace, "w") as fh:
                trace.write(fh)
    except OSError as e:
        raise CliError(EXIT_UNWRITABLE, f"cannot write output: {e}") from None

    if isinstance(stats, DCStats):
        counts = f"recursion levels={stats.levels} sizes={stats.sizes}"
    elif cfg.algorithm == "oracle":
        counts = "iterations=0"
    else:
        counts = f"iterations={stats.iterations}"
    print(f"{cfg.algorithm}: n={len(data)} shards={cfg.shards} time={elapsed:.3f}s {counts}", file=stderr)

    if cfg.check:
        bad = check_suffix_array(data, sa)
        if bad is not None:
            print(f"check: FAILED, {bad}", file=stderr)
            return EXIT_CHECK_FAILED
        if len(data) <= ORACLE_LIMIT and sa != _oracle(data):
            print("check: FAILED, differs from oracle", file=stderr)
            return EXIT_CHECK_FAILED
        note = "checker and oracle" if len(data) <= ORACLE_LIMIT else "checker only, input above oracle limit"
        print(f"check: ok ({note})", file=stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diasaca", description="Suffix array construction on simulated DIAs.")
    # validated in run() so an unknown name gets its own exit code
    p.add_argument("--algo", required=True, help=f"one of: {', '.join(ALGORITHMS)}")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--output", type=Path, default=None, help="default: standard output")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--shards", type=int, default=None, help=f"simulated workers (default: ${SHARDS_ENV} or 1)")
    p.add_argument("--check", action="store_true", help="verify the result")
    p.add_argument("--trace", type=Path, default=None, help="write intermediate arrays to this file")
    p.add_argument("--max-bytes", type=int, default=None, help="only read this many input bytes")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        shards = args.shards if args.shards is not None else default_shards()
        cfg = RunConfig(
            algorithm=args.algo, input=args.input, output=args.output, format=args.format,
            shards=shards, check=args.check, trace=args.trace, max_bytes=args.max_bytes,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
