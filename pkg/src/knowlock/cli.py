"""Command-line interface.

Subcommands: protect, access, attrs, attack, bench.  Post bytes travel
on stdin/stdout (or files); everything diagnostic goes to stderr, and
attribute values are never echoed there.

Exit codes: 0 ok, 1 auto-access found nothing, 2 flag errors,
3 invalid parameters or guess bookkeeping, 4 I/O, 5 malformed envelope,
6 inconsistent attack corpus.
"""

from __future__ import annotations

import argparse
import getpass
import sys
from pathlib import Path

from . import attack as attack_mod
from . import bench as bench_mod
from .envelope import decode, encode
from .errors import (
    BadBase64,
    CountMismatch,
    DuplicateIndex,
    EmptyAfterNormalize,
    EmptyPost,
    EmptyValue,
    InconsistentTargets,
    IndexOutOfRange,
    InvalidParams,
    MalformedCipherText,
    MalformedEnvelope,
    ParseError,
    StoreIoError,
    VersionUnsupported,
    WrongGuessCount,
)
from .primitives import RandomSource
from .scheme import Attribute, access, looks_like_text, protect
from .shamir import SharingParams
from .store import AttributeStore, auto_access, default_store_path

_FLAG_ERRORS = (EmptyAfterNormalize,)
_PARAM_ERRORS = (
    InvalidParams,
    EmptyPost,
    EmptyValue,
    WrongGuessCount,
    IndexOutOfRange,
    DuplicateIndex,
)
_IO_ERRORS = (OSError, StoreIoError)
_ENVELOPE_ERRORS = (
    ParseError,
    VersionUnsupported,
    CountMismatch,
    BadBase64,
    MalformedEnvelope,
    MalformedCipherText,
)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _FLAG_ERRORS as exc:
        return _fail(2, exc)
    except _PARAM_ERRORS as exc:
        return _fail(3, exc)
    except _ENVELOPE_ERRORS as exc:
        return _fail(5, exc)
    except InconsistentTargets as exc:
        return _fail(6, exc)
    except _IO_ERRORS as exc:
        return _fail(4, exc)


def _fail(code: int, exc: Exception) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knowlock",
        description="Protect posts so anyone knowing t of n attribute values can open them.",
    )
    sub = parser.add_subparsers(required=True, metavar="command")

    p = sub.add_parser("protect", help="encrypt a post under attribute values")
    p.add_argument(
        "--attr",
        action="append",
        default=[],
        metavar="DESC=VALUE",
        help="attribute pair, repeatable; order is significant",
    )
    p.add_argument(
        "--threshold",
        type=int,
        default=None,
        help="values needed to open (default: all but one)",
    )
    p.add_argument("--in", dest="infile", default="-", help="post file or - for stdin")
    p.add_argument("--out", dest="outfile", default="-", help="envelope file or - for stdout")
    p.add_argument("--store", default=None, help="also remember the pairs in this store")
    p.add_argument("--seed", type=int, default=None, help="deterministic run (testing only)")
    p.set_defaults(func=cmd_protect)

    a = sub.add_parser("access", help="open a protected post")
    a.add_argument("--in", dest="infile", default="-", help="envelope file or - for stdin")
    a.add_argument("--out", dest="outfile", default="-", help="plaintext file or - for stdout")
    a.add_argument(
        "--value",
        action="append",
        default=[],
        metavar="INDEX=VALUE",
        help="guess for 1-based attribute INDEX, repeatable",
    )
    a.add_argument("--interactive", action="store_true", help="prompt for values without echo")
    a.add_argument("--auto", action="store_true", help="replay values from the store")
    a.add_argument("--store", default=None, help="store path for --auto")
    a.add_argument(
        "--cap", type=int, default=1000, help="max combinations tried by --auto"
    )
    a.set_defaults(func=cmd_access)

    at = sub.add_parser("attrs", help="manage the local attribute store")
    at_sub = at.add_subparsers(required=True, metavar="action")
    add = at_sub.add_parser("add", help="remember a pair")
    add.add_argument("--store", default=None)
    add.add_argument("--desc", required=True)
    add.add_argument("--value", default=None, help="omit to be prompted without echo")
    add.set_defaults(func=cmd_attrs_add)
    lst = at_sub.add_parser("list", help="list stored pairs (values masked)")
    lst.add_argument("--store", default=None)
    lst.add_argument("--reveal", action="store_true", help="show values")
    lst.set_defaults(func=cmd_attrs_list)
    rm = at_sub.add_parser("rm", help="forget pairs for a description")
    rm.add_argument("--store", default=None)
    rm.add_argument("--desc", required=True)
    rm.add_argument("--value", default=None, help="only this value")
    rm.set_defaults(func=cmd_attrs_rm)

    k = sub.add_parser("attack", help="evaluate a dictionary attack on a target corpus")
    k.add_argument("--basis", required=True, help="basis CSV: description,value,count")
    k.add_argument("--targets", required=True, help="target CSV: profile_id,description,value")
    k.add_argument("--threshold", type=int, required=True)
    k.add_argument("--budget", type=int, default=1_000_000)
    k.add_argument("--seed", type=int, default=None, help="rng seed for --crypto mode")
    k.add_argument("--out-dir", default=".", help="where report.json and payoff.csv go")
    k.add_argument(
        "--failed-cost",
        choices=("search_space", "budget"),
        default="search_space",
        help="what a closed post contributes to mean trials",
    )
    k.add_argument(
        "--crypto",
        action="store_true",
        help="actually decrypt per trial instead of comparing values (slow)",
    )
    k.set_defaults(func=cmd_attack)

    b = sub.add_parser("bench", help="time the elementary operations")
    b.add_argument("--suite", required=True, choices=bench_mod.SUITES)
    b.add_argument("--runs", type=int, default=100)
    b.add_argument("--sizes", default=None, help="comma-separated byte sizes")
    b.add_argument("--schemes", default=None, help='comma-separated "t-of-n" list')
    b.add_argument("--out", default="-", help="CSV file or - for stdout")
    b.add_argument("--seed", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    return parser


# --- protect / access ---


def cmd_protect(args) -> int:
    pairs = []
    for spec in args.attr:
        desc, eq, value = spec.partition("=")
        if not eq or not desc:
            return _usage(f"--attr needs DESC=VALUE, got {spec!r}")
        pairs.append(Attribute(description=desc, value=value))
    if not pairs:
        return _usage("at least one --attr is required")
    n = len(pairs)
    t = args.threshold if args.threshold is not None else max(1, n - 1)

    post = _read_bytes(args.infile)
    rng = RandomSource(args.seed)
    pp = protect(pairs, post, SharingParams(n=n, t=t), rng)

    _write_text(args.outfile, encode(pp))
    names = ", ".join(pp.descriptions)
    print(f"protected: n={n} t={t} descriptions: {names}", file=sys.stderr)

    if args.store:
        store = AttributeStore.load(args.store)
        for a in pairs:
            store.put(a.description, a.value)
        store.save()
        print(f"remembered {n} pairs in {args.store}", file=sys.stderr)
    return 0


def cmd_access(args) -> int:
    pp = decode(_read_text(args.infile))

    if args.auto:
        store = AttributeStore.load(args.store or default_store_path())
        result = auto_access(pp, store, cap=args.cap)
        if result.cap_exceeded:
            print(
                f"gave up after {result.combinations_tried} combinations (cap)",
                file=sys.stderr,
            )
        if not result.matched:
            print("no stored combination opened the post", file=sys.stderr)
            return 1
        print(
            f"opened after {result.combinations_tried} combinations"
            f" ({result.confidence})",
            file=sys.stderr,
        )
        _write_bytes(args.outfile, result.plaintext)
        return 0

    if args.interactive:
        guesses = _prompt_values(pp)
    else:
        guesses = []
        for spec in args.value:
            idx, eq, value = spec.partition("=")
            if not eq or not idx.isdigit():
                return _usage(f"--value needs INDEX=VALUE with numeric index, got {spec!r}")
            guesses.append((int(idx), value))

    out = access(guesses, pp)
    if not looks_like_text(out):
        print(
            "warning: output does not look like text — values may be wrong",
            file=sys.stderr,
        )
    _write_bytes(args.outfile, out)
    return 0


def _prompt_values(pp) -> list[tuple[int, str]]:
    t = pp.params.t
    print(f"enter values for {t} of {pp.params.n} attributes", file=sys.stderr)
    guesses = []
    for i, desc in enumerate(pp.descriptions, start=1):
        if len(guesses) == t:
            break
        remaining = t - len(guesses)
        left = pp.params.n - i + 1
        must = remaining == left
        prompt = f"[{i}] {desc}{'' if must else ' (blank to skip)'}: "
        value = getpass.getpass(prompt)
        if value or must:
            guesses.append((i, value))
    return guesses


# --- attribute store ---


def cmd_attrs_add(args) -> int:
    value = args.value
    if value is None:
        value = getpass.getpass(f"value for {args.desc!r}: ")
    if not value.strip():
        return _usage("value must be non-empty")
    store = AttributeStore.load(args.store or default_store_path())
    store.put(args.desc, value)
    store.save()
    print(f"stored a value for {args.desc!r}", file=sys.stderr)
    return 0


def cmd_attrs_list(args) -> int:
    store = AttributeStore.load(args.store or default_store_path())
    for e in store.entries:
        shown = e.value if args.reveal else "********"
        print(f"{e.description}\t{shown}\t{e.created_at}")
    print(f"{len(store.entries)} entries", file=sys.stderr)
    return 0


def cmd_attrs_rm(args) -> int:
    store = AttributeStore.load(args.store or default_store_path())
    removed = store.delete(args.desc, args.value)
    if removed:
        store.save()
        print(f"removed {removed} entries", file=sys.stderr)
    else:
        print(f"nothing stored for {args.desc!r}; nothing removed", file=sys.stderr)
    return 0


# --- attack / bench ---


def cmd_attack(args) -> int:
    basis = attack_mod.FrequencyTable.from_csv(
        _read_text(args.basis), source=Path(args.basis).stem
    )
    targets = attack_mod.profiles_from_csv(_read_text(args.targets))
    report = attack_mod.run_attack(
        targets,
        basis,
        t=args.threshold,
        budget=args.budget,
        failed_cost=args.failed_cost,
        crypto_check=args.crypto,
        rng=RandomSource(args.seed) if args.crypto else None,
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report.to_json(), encoding="utf-8")
    (out_dir / "payoff.csv").write_text(report.payoff_csv(), encoding="utf-8")
    print(
        f"attacked {report.target_count} posts at t={report.threshold}: "
        f"success_rate={report.success_rate:.4f} mean_trials={report.mean_trials:.1f} "
        f"(search space {report.search_space})",
        file=sys.stderr,
    )
    return 0


def cmd_bench(args) -> int:
    if args.runs < bench_mod.MIN_RUNS:
        return _usage(f"--runs must be at least {bench_mod.MIN_RUNS}")
    sizes = bench_mod.DEFAULT_SIZES
    if args.sizes:
        try:
            sizes = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            return _usage(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    schemes = bench_mod.DEFAULT_SCHEMES
    if args.schemes:
        schemes = []
        for spec in args.schemes.split(","):
            try:
                t_str, n_str = spec.strip().split("-of-")
                schemes.append((int(t_str), int(n_str)))
            except ValueError:
                return _usage(f'--schemes wants "t-of-n" entries, got {spec!r}')

    records = bench_mod.run_suite(
        args.suite,
        runs=args.runs,
        schemes=schemes,
        sizes=sizes,
        rng=RandomSource(args.seed),
    )
    _write_text(args.out, bench_mod.records_to_csv(records))
    return 0


# --- plumbing ---


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")


if __name__ == "__main__":
    sys.exit(main())
