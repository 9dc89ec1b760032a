"""Command-line entry point: ``termmatch match|rewrite|bench|net``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, netfile
from .discrimination_net import DiscriminationNet
from .errors import NetFormatError, NonTerminationError, ParseError, TermMatchError, UnsupportedPatternError
from .many_to_one import ManyToOneMatcher
from .one_to_one import match
from .rewriting import ReplacementRule, RewriteConfig, replace_all
from .syntax import (
    _strip_comment,
    format_substitution,
    format_term,
    parse_pattern,
    parse_pattern_file,
    parse_signature_file,
    parse_term,
    split_rule_line,
)
from .constraint_lang import parse_constraint
from .terms import Pattern, Registry

EXIT_MATCH, EXIT_NO_MATCH, EXIT_USAGE, EXIT_LIMIT, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _registry(path) -> Registry:
    if path is None:
        return Registry()
    return parse_signature_file(Path(path).read_text())


def _patterns(args, registry):
    patterns = [parse_pattern(text, registry) for text in args.pattern]
    if args.patterns_file:
        patterns += parse_pattern_file(Path(args.patterns_file).read_text(), registry)
    if not patterns:
        raise UsageError("no patterns given (use -p or --patterns-file)")
    return patterns


def _matches(patterns, subject, kind, registry):
    if kind == "one-to-one":
        for pid, p in enumerate(patterns):
            for subst in match(subject, p):
                yield pid, subst
    elif kind == "many-to-one":
        yield from sorted(ManyToOneMatcher(patterns).match(subject), key=lambda m: m[0])
    else:
        try:
            net = DiscriminationNet(patterns, registry.class_parents)
        except UnsupportedPatternError as exc:
            raise UsageError(
                f"{exc}; the deterministic net only handles patterns without sequence "
                "wildcards, associative or commutative operations, and constraints"
            ) from None
        yield from net.match(subject)


def cmd_match(args) -> int:
    registry = _registry(args.signatures)
    patterns = _patterns(args, registry)
    subject = parse_term(args.subject, registry)
    found = 0
    for pid, subst in _matches(patterns, subject, args.matcher, registry):
        prefix = f"{pid} with " if len(patterns) > 1 else ""
        print(prefix + format_substitution(subst))
        found += 1
        if args.first:
            break
    return EXIT_MATCH if found else EXIT_NO_MATCH


def parse_rules(text: str, registry: Registry):
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        try:
            pattern_text, constraint_text, template_text = split_rule_line(line)
            if template_text is None:
                raise ParseError("expected 'pattern [| constraint] => template'")
            constraints = [parse_constraint(constraint_text)] if constraint_text else []
            pattern = Pattern(parse_term(pattern_text, registry), *constraints)
            template = parse_term(template_text, registry)
        except ParseError as exc:
            raise ParseError(f"rules file: {exc.message}", lineno, exc.column) from None
        rules.append(ReplacementRule.from_template(pattern, template))
    return rules


def cmd_rewrite(args) -> int:
    registry = _registry(args.signatures)
    rules = parse_rules(Path(args.rules).read_text(), registry)
    subject = parse_term(args.subject, registry)
    try:
        print(format_term(replace_all(subject, rules, RewriteConfig(max_iterations=args.max_iter))))
    except NonTerminationError as exc:
        print(f"error: no normal form after {args.max_iter} rewrites", file=sys.stderr)
        print(format_term(exc.term))
        return EXIT_LIMIT
    return EXIT_MATCH


def cmd_bench(args) -> int:
    config = bench.BenchConfig(
        suite=args.suite, patterns=args.patterns, subjects=args.subjects, seed=args.seed,
        repetitions=args.repetitions, matchers=tuple(args.matcher or ()),
    )
    corpus = bench.generate_corpus(config)
    if args.subjects_out:
        Path(args.subjects_out).write_text(bench.corpus_text(corpus))
    try:
        rows = bench.run_bench(config, corpus)
    except bench.BenchMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    else:
        bench.write_csv(rows, sys.stdout)
    return EXIT_MATCH


def cmd_net(args) -> int:
    if args.action == "save":
        registry = _registry(args.signatures)
        net = ManyToOneMatcher(_patterns(args, registry))
        netfile.save(net, args.file, registry)
        print(f"saved {len(net.patterns)} patterns, {len(net.states)} states to {args.file}")
        return EXIT_MATCH
    net, registry = netfile.load(args.file)
    if args.subject is None:
        print(f"{len(net.patterns)} patterns, {len(net.states)} states")
        for pid, p in enumerate(net.patterns):
            print(f"{pid}: {p}")
        return EXIT_MATCH
    found = 0
    for pid, subst in sorted(net.match(parse_term(args.subject, registry)), key=lambda m: m[0]):
        print(f"{pid} with {format_substitution(subst)}")
        found += 1
    return EXIT_MATCH if found else EXIT_NO_MATCH


def _pattern_args(p):
    p.add_argument("--signatures", help="signature declaration file")
    p.add_argument("-p", "--pattern", action="append", default=[],
                   help='pattern, optionally followed by "| constraint"; repeatable')
    p.add_argument("--patterns-file", help="file with one pattern per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termmatch", description="Pattern matching on terms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="match a subject against patterns")
    _pattern_args(p)
    p.add_argument("subject")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--first", action="store_true", help="stop after the first match")
    mode.add_argument("--all", action="store_true", help="print every match (default)")
    p.add_argument("--matcher", choices=("one-to-one", "many-to-one", "dn"), default="one-to-one")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("rewrite", help="rewrite a subject to normal form")
    p.add_argument("--signatures")
    p.add_argument("--rules", required=True, help="file of 'pattern | constraint => template' lines")
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("subject")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("bench", help="time the matchers on a generated corpus")
    p.add_argument("--suite", choices=bench.SUITES, default="linalg")
    p.add_argument("--patterns", type=int, default=40)
    p.add_argument("--subjects", type=int, default=100)
    p.add_argument("--seed", type=int, help="defaults to $TERMMATCH_SEED, then 0")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--matcher", action="append", choices=tuple(bench.RUNNERS),
                   help="restrict to these matchers; repeatable")
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--subjects-out", help="also write the generated subjects here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("net", help="save or load a many-to-one matcher")
    p.add_argument("action", choices=("save", "load"))
    p.add_argument("file")
    _pattern_args(p)
    p.add_argument("--subject", help="with load: match this subject")
    p.set_defaults(func=cmd_net)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, NetFormatError, OSError, ValueError, TermMatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
