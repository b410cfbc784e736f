"""Command-line surface: single coefficients, expansions, counts, oracle
verification, and deterministic file-based sharding.

Exit codes: 0 success, 1 usage or I/O failure, 2 verification/merge failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .coefficients import expand, g_coefficient
from .hyperdet import BudgetError
from .partitions import count_admissible, enumerate_admissible, is_admissible
from .records import (
    ResultRecord,
    ShardManifest,
    enumeration_checksum,
    manifest_from_jsonl,
    manifest_to_jsonl,
    record_from_jsonl,
    record_to_jsonl,
    write_records,
)

USAGE_EXIT = 1
VERIFY_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _parse_lambda(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)) or (
        parts and parts[-1] < 0
    ):
        raise ValueError(f"{text!r} is not a decreasing nonnegative partition")
    return parts


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def cmd_coeff(args) -> int:
    try:
        lam = _parse_lambda(args.lam)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    if len(lam) > args.n:
        print(f"error: more than {args.n} parts in {args.lam!r}", file=sys.stderr)
        return USAGE_EXIT
    if not is_admissible(lam, args.n, args.k):
        print(
            f"warning: {list(lam)} is not admissible for n={args.n}, k={args.k}; "
            "coefficient is 0",
            file=sys.stderr,
        )
        coeff = 0
    else:
        coeff = g_coefficient(lam, args.n, args.k, factorize=not args.no_factorize)
    record = ResultRecord(n=args.n, k=args.k, lam=lam, coeff=coeff)
    print(record_to_jsonl(record))
    return 0


def _expansion_records(n, k, jobs, factorize=True):
    exp = expand(n, k, workers=jobs, factorize=factorize)
    return [ResultRecord(n=n, k=k, lam=lam, coeff=g) for lam, g in exp]


def cmd_expand(args) -> int:
    records = _expansion_records(args.n, args.k, args.jobs, not args.no_factorize)
    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        out.writelines(write_records(records, args.format))
    finally:
        if close:
            out.close()
    return 0


def cmd_admissible(args) -> int:
    if args.count_only:
        print(count_admissible(args.n, args.k))
        return 0
    for lam in enumerate_admissible(args.n, args.k):
        print(" ".join(map(str, lam)))
    return 0


def cmd_verify(args) -> int:
    from .oracle import schur_expansion_bruteforce

    engine = expand(args.n, args.k, workers=args.jobs)
    reference = schur_expansion_bruteforce(args.n, args.k)
    if list(engine.terms) != list(reference.terms):
        print("mismatch: partition enumerations differ", file=sys.stderr)
        return VERIFY_EXIT
    for lam, g in engine:
        expected = reference.terms[lam]
        if g != expected:
            print(
                f"mismatch at lambda={list(lam)}: engine {g}, oracle {expected}",
                file=sys.stderr,
            )
            return VERIFY_EXIT
    print(f"verified n={args.n} k={args.k}: {len(engine)} coefficients agree")
    return 0


def cmd_shard(args) -> int:
    if not 0 <= args.index < args.shards:
        print(
            f"error: index {args.index} outside 0..{args.shards - 1}", file=sys.stderr
        )
        return USAGE_EXIT
    lams = list(enumerate_admissible(args.n, args.k))
    mine = lams[args.index :: args.shards]
    manifest = ShardManifest(
        n=args.n,
        k=args.k,
        shards=args.shards,
        index=args.index,
        count=len(mine),
        checksum=enumeration_checksum(args.n, args.k),
    )
    # worker pool over this shard's positions only
    from .coefficients import _coefficient_chunk

    values = _coefficient_chunk((args.n, args.k, mine, True))
    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        out.write(manifest_to_jsonl(manifest) + "\n")
        for lam, coeff in zip(mine, values):
            out.write(
                record_to_jsonl(ResultRecord(n=args.n, k=args.k, lam=lam, coeff=coeff))
                + "\n"
            )
    finally:
        if close:
            out.close()
    return 0


def cmd_merge(args) -> int:
    shard_records: dict[int, list[ResultRecord]] = {}
    manifests: list[ShardManifest] = []
    for path in args.files:
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return USAGE_EXIT
        if not lines:
            print(f"merge failure: {path} is empty", file=sys.stderr)
            return VERIFY_EXIT
        try:
            manifest = manifest_from_jsonl(lines[0])
        except (ValueError, KeyError) as exc:
            print(f"merge failure: {path}: {exc}", file=sys.stderr)
            return VERIFY_EXIT
        if manifest.index in shard_records:
            print(
                f"merge failure: duplicate shard index {manifest.index}",
                file=sys.stderr,
            )
            return VERIFY_EXIT
        manifests.append(manifest)
        shard_records[manifest.index] = [
            record_from_jsonl(line) for line in lines[1:] if line.strip()
        ]

    ref = manifests[0]
    for m in manifests[1:]:
        if (m.n, m.k, m.shards, m.checksum) != (ref.n, ref.k, ref.shards, ref.checksum):
            print("merge failure: manifests disagree on (n, k, shards, checksum)",
                  file=sys.stderr)
            return VERIFY_EXIT
    if ref.checksum != enumeration_checksum(ref.n, ref.k):
        print("merge failure: checksum does not match the admissible enumeration",
              file=sys.stderr)
        return VERIFY_EXIT

    lams = list(enumerate_admissible(ref.n, ref.k))
    missing = sorted(set(range(ref.shards)) - set(shard_records))
    if missing:
        lost = sum(len(lams[j :: ref.shards]) for j in missing)
        print(
            f"merge failure: missing shard index(es) {missing}: "
            f"{lost} missing of {len(lams)}",
            file=sys.stderr,
        )
        return VERIFY_EXIT

    merged: list[ResultRecord | None] = [None] * len(lams)
    for m in manifests:
        expected = lams[m.index :: m.shards]
        got = shard_records[m.index]
        if len(got) != len(expected) or len(got) != m.count:
            print(
                f"merge failure: shard {m.index} holds {len(got)} records, "
                f"expected {len(expected)}",
                file=sys.stderr,
            )
            return VERIFY_EXIT
        for pos, (lam, rec) in enumerate(zip(expected, got)):
            if rec.lam != lam or rec.n != ref.n or rec.k != ref.k:
                print(
                    f"merge failure: shard {m.index} record {pos} does not match "
                    f"the canonical enumeration",
                    file=sys.stderr,
                )
                return VERIFY_EXIT
            merged[m.index + pos * m.shards] = rec

    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return USAGE_EXIT
    try:
        out.writelines(write_records(merged, args.format))
    finally:
        if close:
            out.close()
    return 0


def cmd_selftest(args) -> int:
    from . import selftest

    return selftest.run()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vanschur", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("coeff", help="one coefficient without computing the others")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="comma-separated decreasing parts, e.g. 4,1,1")
    p.add_argument("--no-factorize", action="store_true")
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("expand", help="all admissible coefficients of (n, k)")
    common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", default=None)
    p.add_argument("--no-factorize", action="store_true")
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("admissible", help="list or count admissible partitions")
    common(p)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_admissible)

    p = sub.add_parser("verify", help="cross-check the engine against brute force")
    common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("shard", help="compute one deterministic slice of (n, k)")
    common(p)
    p.add_argument("--shards", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_shard)

    p = sub.add_parser("merge", help="validate shard files and emit canonical output")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_merge)

    p = sub.add_parser("selftest", help="run the built-in consistency battery")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.fn(args)
    except (ValueError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


def entrypoint() -> None:
    sys.exit(main())
