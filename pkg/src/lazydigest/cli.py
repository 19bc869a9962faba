"""
Command-line entry point.

Exit status: 0 on success, 1 for usage errors (including bad descriptors),
2 when a computation does not succeed (no proof-of-work found, a battery
test failed). Data goes to stdout and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Optional, Sequence

from . import analysis, applications
from .descriptor import DescriptorError, loads
from .errors import LazyDigestError
from .hash_backend import HashSpec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _index_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("indices must be non-negative")
    return values


def _hex_bytes(text: str) -> bytes:
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid hex string {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lazydigest", description="Seed-deterministic infinite digests.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="emit stream bytes")
    gen.add_argument("-d", "--descriptor", required=True)
    gen.add_argument("-n", type=_non_negative, required=True, help="number of bytes")
    gen.add_argument("--offset", type=_non_negative, default=0)
    gen.add_argument("--format", choices=("hex", "raw"), default="hex")

    sample = sub.add_parser("sample", help="emit bytes at chosen indices")
    sample.add_argument("-d", "--descriptor", required=True)
    sample.add_argument("-i", "--indices", type=_index_list, required=True)

    stats = sub.add_parser("stats", help="run the statistical battery")
    stats.add_argument("-d", "--descriptor", required=True)
    stats.add_argument("-n", type=_non_negative, default=10**6)

    cycle = sub.add_parser("cycle", help="rho structure of an iterated toy hash")
    cycle.add_argument("--bits", type=int, required=True)
    cycle.add_argument("--starts", type=_non_negative, default=8)
    cycle.add_argument("--tweak", type=int, default=None)
    cycle.add_argument("--seed", type=int, default=0, help="seed for choosing start states")

    pow_ = sub.add_parser("pow", help="search for a proof-of-work nonce")
    pow_.add_argument("--header-hex", type=_hex_bytes, required=True)
    pow_.add_argument("--difficulty", type=int, required=True)
    pow_.add_argument("--max-nonce", type=_non_negative, default=applications.MAX_NONCE)

    kdf = sub.add_parser("kdf", help="memory-hard key derivation")
    kdf.add_argument("--password", required=True)
    kdf.add_argument("--salt-hex", type=_hex_bytes, required=True)
    kdf.add_argument("--cost", type=int, required=True)

    ts = sub.add_parser("teststream", help="bytes of a named test stream")
    ts.add_argument("--id", required=True)
    ts.add_argument("-n", type=_non_negative, required=True)
    return parser


def _write_hex(data: bytes) -> None:
    if data:
        sys.stdout.write(data.hex() + "\n")


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "gen":
        data = loads(args.descriptor).read(args.offset, args.n)
        if args.format == "raw":
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            _write_hex(data)
        return EXIT_OK
    if cmd == "sample":
        _write_hex(loads(args.descriptor).sample(args.indices))
        return EXIT_OK
    if cmd == "stats":
        reports = analysis.run_battery(loads(args.descriptor), args.n)
        for report in reports:
            print(report)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED
    if cmd == "cycle":
        spec = HashSpec.toy(args.bits, args.tweak)
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.starts):
            start = rng.randrange(1 << args.bits)
            report = analysis.detect_cycle(spec, start)
            reports.append(report)
            print(f"start={start} {report}")
        if reports:
            mean = sum(r.cycle_length for r in reports) / len(reports)
            print(f"mean_cycle={mean:.4f}")
        print(f"expected={analysis.expected_cycle_length(args.bits):.4f}")
        return EXIT_OK
    if cmd == "pow":
        result = applications.find_pow(args.header_hex, args.difficulty, args.max_nonce)
        if not result.found:
            print(f"no nonce found in {result.attempts} attempts", file=sys.stderr)
            return EXIT_FAILED
        print(f"nonce={result.nonce} attempts={result.attempts} candidate={result.candidate.hex()}")
        return EXIT_OK
    if cmd == "kdf":
        key = applications.memory_hard_kdf(args.password.encode("utf-8"), args.salt_hex, args.cost)
        print(key.hex())
        return EXIT_OK
    if cmd == "teststream":
        _write_hex(applications.test_stream(args.id).read(0, args.n))
        return EXIT_OK
    raise _UsageError(f"unknown command {cmd!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _run(args)
    except DescriptorError as exc:
        print(f"lazydigest: bad descriptor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LazyDigestError as exc:
        # Argument values rejected by the library (difficulty > 256, empty salt, ...)
        print(f"lazydigest: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
