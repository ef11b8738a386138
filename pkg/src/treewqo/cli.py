"""Command-line front end.

Subcommands: compare (one pair of terms), whistle (a tree stream file),
census (random-corpus pair counts, optionally audited), bench (optimized
vs naive checker timings).  Results go to stdout, diagnostics to stderr.

Exit codes: compare 0 related / 1 unrelated / 2 error; whistle 0 whistled
/ 1 stream exhausted / 2 error; census and bench 0 ok / 1 audit failure /
2 error.
"""

from __future__ import annotations

import argparse
import sys

from .bench import bench_whistle
from .census import census, hierarchy_audit, write_census_tsv
from .generate import GeneratorConfig, generate_corpus
from .orders import WqoSpec, all_named_specs, base_relation, parse_wqo_name
from .signature import ParseError, Signature, default_signature, parse_tree
from .whistle import SequenceChecker


def _load_signature(path: str | None) -> Signature:
    return Signature.from_file(path) if path else default_signature()


def _spec(args) -> WqoSpec:
    return parse_wqo_name(args.wqo, args.k)


def cmd_compare(args) -> int:
    sig = _load_signature(args.sig)
    spec = _spec(args)
    s = parse_tree(args.term1, sig)
    t = parse_tree(args.term2, sig)
    related = True
    for letter in spec.evaluation_order:
        verdict = base_relation(letter, spec.y_threshold)(s, t)
        related = related and verdict
        print(f"{letter}: {'related' if verdict else 'unrelated'}")
    print("RELATED" if related else "UNRELATED")
    return 0 if related else 1


def cmd_whistle(args) -> int:
    sig = _load_signature(args.sig)
    checker = SequenceChecker(_spec(args))
    with open(args.stream, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                t = parse_tree(line, sig)
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            outcome = checker.push(t)
            print(outcome)
            if outcome.whistled:
                return 0
    return 1


def cmd_census(args) -> int:
    sig = _load_signature(args.sig)
    if args.wqo.lower() == "all":
        specs = [WqoSpec(s.components, args.k) for s in all_named_specs()]
    else:
        specs = [parse_wqo_name(name, args.k) for name in args.wqo.split(",")]
    cfg = GeneratorConfig(sig, seed=args.seed, corpus_size=args.n, size_cap=args.cap)
    corpus = generate_corpus(cfg)
    result = census(corpus, specs, config=cfg)
    write_census_tsv(result)
    if args.audit:
        report = hierarchy_audit(result, corpus)
        print(report.summary(), file=sys.stderr)
        if not report.ok:
            return 1
    return 0


def cmd_bench(args) -> int:
    sig = _load_signature(args.sig)
    report = bench_whistle(_spec(args), args.n, args.size, sig=sig)
    sys.stdout.write(report.to_tsv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treewqo",
        description="Well-quasi orders on trees: pairwise comparison, whistle "
                    "runs, censuses and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, wqo_default=None):
        p.add_argument("--sig", metavar="PATH", default=None,
                       help="signature file (default: built-in a/0 b/1 c/2 d/3)")
        if wqo_default is None:
            p.add_argument("--wqo", required=True, metavar="NAME",
                           help="order name, e.g. H, SB, YZP")
        else:
            p.add_argument("--wqo", default=wqo_default, metavar="NAME")
        p.add_argument("--k", type=int, default=2,
                       help="repetition threshold for the Y component (default 2)")

    p = sub.add_parser("compare", help="compare two terms under one order")
    common(p)
    p.add_argument("term1")
    p.add_argument("term2")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("whistle", help="run a checker over a tree stream file")
    common(p)
    p.add_argument("stream", help="tree file, one term per line")
    p.set_defaults(func=cmd_whistle)

    p = sub.add_parser("census", help="count related pairs over a random corpus")
    common(p, wqo_default="all")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=400, help="corpus size (default 400)")
    p.add_argument("--cap", type=int, default=1000, help="tree size cap (default 1000)")
    p.add_argument("--audit", action="store_true",
                   help="verify hierarchy implications, identities and strictness")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bench", help="time optimized vs naive checkers at n and 2n")
    common(p)
    p.add_argument("--n", type=int, required=True, help="stream length")
    p.add_argument("--size", type=int, default=50, help="approximate tree size")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
