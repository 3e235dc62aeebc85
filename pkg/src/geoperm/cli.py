"""Command-line interface.

Exit codes: 0 realizable / success, 1 unrealizable / check failed,
2 usage or parse error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Optional, Sequence

from .core import ParseError, TaggedPattern, Triple, format_pattern, normalize_triple, parse_pattern
from .decider import UndecidedOrientationError, check_verdict, decide_full, decide_tagged

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _input_pattern(args):
    if args.triple is not None:
        p = parse_pattern(args.triple)
        if not isinstance(p, Triple):
            raise UsageError("--triple expects an untagged triple")
        return p
    if args.tagged is not None:
        p = parse_pattern(args.tagged)
        if not isinstance(p, TaggedPattern):
            raise UsageError("--tagged expects z and o on every line")
        return p
    return parse_pattern(args.tokens)


def _filter_for(t: Triple, enabled: bool):
    if not enabled or t.n <= 4:
        return None
    from .mining import SubpatternFilter
    return SubpatternFilter.of_size(4)


def _decide(p, use_filter: bool):
    if isinstance(p, TaggedPattern):
        return decide_tagged(p, engine="compiled")
    return decide_full(p, prefilter=_filter_for(p, use_filter), engine="compiled")


def cmd_decide(args) -> int:
    p = _input_pattern(args)
    verdict = _decide(p, not args.no_filter)
    if not verdict.realizable:
        print("unrealizable")
        return EXIT_NO
    print("realizable")
    if verdict.reversals is not None:
        print(f"reversals: {verdict.reversals}")
    print(f"pattern: {format_pattern(verdict.pattern)}")
    return EXIT_OK


def cmd_realize(args) -> int:
    from .records import ResultRecord
    p = _input_pattern(args)
    t0 = time.perf_counter()
    verdict = _decide(p, not args.no_filter)
    ms = int(round((time.perf_counter() - t0) * 1000))
    if verdict.realizable and not check_verdict(verdict):
        print("certificate failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    if isinstance(p, TaggedPattern):
        t = p.triple
        if verdict.realizable:
            verdict = type(verdict)(True, verdict.pattern, verdict.certificate, 0)
    else:
        t = p
    rec = ResultRecord.from_verdict(t, verdict, ms)
    line = rec.to_json()
    if args.out:
        with open(args.out, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
    print(line)
    return EXIT_OK if rec.verdict else EXIT_NO


def cmd_verify(args) -> int:
    from .records import read_records
    bad = total = 0
    for rec in read_records(args.input):
        total += 1
        if not rec.verifies():
            bad += 1
            print(f"record {total}: verification failed", file=sys.stderr)
    print(f"{total - bad}/{total} records verified")
    return EXIT_OK if bad == 0 else EXIT_NO


def cmd_enumerate(args) -> int:
    from .enumeration import run_enumeration
    if args.size < 1:
        raise UsageError("--size must be positive")
    s = run_enumeration(args.size, args.out, short_circuit=not args.no_short_circuit,
                        timings=args.timings)
    print(f"size {s.size}: {s.total} triples, {s.realizable} realizable, "
          f"{s.unrealizable} unrealizable ({s.seconds:.1f} s)")
    return EXIT_OK


def cmd_compare(args) -> int:
    from .records import read_records
    from .table import compare_forbidden_list
    diff = compare_forbidden_list(read_records(args.input), args.table)
    print(diff.report())
    return EXIT_OK if diff.empty else EXIT_NO


def cmd_mine(args) -> int:
    from .mining import mine_levels
    if args.max_size > 4 and not args.long:
        raise UsageError("sizes above 4 take hours or more; pass --long to run them")
    for k, _, minimal in mine_levels(args.max_size):
        print(f"# size {k}: {len(minimal)} minimal forbidden classes")
        for words, tags in sorted(minimal):
            print(format_pattern(TaggedPattern.from_parts(words, tags)))
    return EXIT_OK


def cmd_normalize(args) -> int:
    t = parse_pattern(" ".join(args.triple))
    if not isinstance(t, Triple):
        raise UsageError("normalize expects three untagged words")
    print(format_pattern(normalize_triple(t)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import MAX_ORACLE_N, oracle_decide_tagged
    p = parse_pattern(args.tagged)
    if not isinstance(p, TaggedPattern):
        raise UsageError("--tagged expects z and o on every line")
    if p.n > MAX_ORACLE_N:
        raise UsageError(f"the oracle handles n <= {MAX_ORACLE_N}")
    verdict = oracle_decide_tagged(p)
    print("realizable" if verdict.realizable else "unrealizable")
    return EXIT_OK if verdict.realizable else EXIT_NO


def _add_input(sp):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--triple", help='three digit words, e.g. "012 120 201"')
    g.add_argument("--tagged", help='tagged pattern, e.g. "0 1 z o | z o 0 1 | z o 0 1"')
    g.add_argument("--tokens", help="token-grammar input, tagged or untagged")
    sp.add_argument("--no-filter", action="store_true",
                    help="do not skip taggings containing a known forbidden size-4 pattern")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geoperm", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("decide", help="decide realizability of a triple or tagged pattern")
    _add_input(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("realize", help="print a result record with a certificate")
    _add_input(sp)
    sp.add_argument("--out", help="append the record to this file")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("verify", help="re-check every record of a results file")
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="decide all normalized triples of one size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--no-short-circuit", action="store_true")
    sp.add_argument("--timings", action="store_true", help="record runtimes (output no longer reproducible)")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("compare", help="diff unrealizable records against a forbidden-triple table")
    sp.add_argument("--input", required=True)
    sp.add_argument("--table", help="table file (default: the shipped size-6 table)")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("mine", help="list minimal forbidden tagged patterns")
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--long", action="store_true")
    sp.set_defaults(func=cmd_mine)

    sp = sub.add_parser("normalize", help="normal form of a triple")
    sp.add_argument("--triple", nargs=3, required=True, metavar="W")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("oracle", help="brute-force verdict for a tagged pattern (n <= 3)")
    sp.add_argument("--tagged", required=True)
    sp.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndecidedOrientationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
