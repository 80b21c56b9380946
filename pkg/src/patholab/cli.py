"""Command-line interface.

Commands::

    patholab classify "<formula>"      classify one formula
    patholab run <corpus-file>         classify every corpus entry
    patholab audit-1jt <corpus-file>   check no entry and its negation are
                                       both refuted
    patholab --seed-corpus <path>      write the bundled corpus and exit

Shared flags: --refute-depth (default 3), --refute-steps (default 50000),
--model-size (default 5), --format json|text (default text).

Exit codes: 0 success; 1 an expected verdict mismatched or the audit
failed; 2 usage, parse, or file errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import BUNDLED_CORPUS_TEXT, CorpusEntry, parse_corpus_lenient
from .pipeline import Config, Pipeline, MATCHER_LIMITS


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _entry_line(report: dict) -> str:
    name = report.get("name", "?")
    if report.get("error"):
        return f"{name}: ERROR {report['error']}"
    bits = [report["stratification"]["status"],
            report["syntactic"]["verdict"],
            f"hereditary {report['hereditary']['overall']}"]
    if report.get("size_class"):
        bits.append(report["size_class"])
    line = f"{name}: {report['verdict']} [{'; '.join(bits)}]"
    if report.get("expected") is not None:
        tag = "ok" if report.get("expected_match") else "MISMATCH"
        line += f" (expected {report['expected']}: {tag})"
    return line


def _classify_text(report: dict) -> str:
    lines = [_entry_line(report)]
    if report.get("error"):
        return "\n".join(lines)
    if report.get("wrapped"):
        lines.append("  note: closed input was wrapped as B & (x = x)")
    lines.append(f"  canonical: {report['canonical']}")
    strat = report["stratification"]
    if strat["status"] == "Stratified":
        levels = ", ".join(f"{k}={v}" for k, v in sorted(strat["levels"].items()))
        lines.append(f"  stratification: Stratified ({levels})")
    else:
        walk = "; ".join(c["origin"] for c in strat["cycle"])
        lines.append(f"  stratification: Unstratified "
                     f"(cycle sum {strat['cycle_sum']}: {walk})")
    synt = report["syntactic"]
    if synt["match"] is not None:
        lines.append(f"  syntactic: {synt['verdict']} n={synt['match']['n']} "
                     f"on {synt['matched_subformula']}")
    else:
        lines.append(f"  syntactic: {synt['verdict']}")
    cert = report.get("certificate")
    if cert is not None and cert["kind"] == "refutation":
        lines.append(f"  refutation: depth {cert['depth']}, "
                     f"{cert['steps']} steps")
        lines.extend(f"    {line}" for line in cert["proof"])
    elif cert is not None:
        lines.append(f"  model: size {cert['size']}")
        lines.extend(f"    {line}" for line in cert["lines"])
    if report.get("reasons"):
        for reason in report["reasons"]:
            lines.append(f"  open: {reason}")
    lines.append(f"  hereditary: {report['hereditary']['overall']}")
    for sub in report["hereditary"]["entries"]:
        lines.append(f"    {sub['status']}: {sub['formula']} ({sub['detail']})")
    return "\n".join(lines)


def _run_text(report: dict) -> str:
    lines = [_entry_line(e) for e in report["entries"]]
    s = report["summary"]
    verdicts = ", ".join(f"{k}={v}" for k, v in sorted(s["verdicts"].items()))
    lines.append(f"summary: {s['total']} entries ({verdicts}); "
                 f"{s['errors']} errors; "
                 f"{s['expected_mismatches']} expected mismatches")
    return "\n".join(lines)


def _audit_text(report: dict) -> str:
    lines = []
    for pair in report["pairs"]:
        if pair.get("error"):
            lines.append(f"{pair['name']}: ERROR {pair['error']}")
            continue
        tag = "ok" if pair["ok"] else "BOTH REFUTED"
        lines.append(f"{pair['name']}: {pair['verdict']} / "
                     f"negation {pair['negation_verdict']} ({tag})")
    lines.append(f"audit 1jt: {report['status']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patholab",
        description="Classify set-builder predicates as ProvedPatho, "
                    "CertifiedNonPatho, or Unknown.")
    parser.add_argument("--seed-corpus", metavar="PATH",
                        help="write the bundled corpus file to PATH and exit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--refute-depth", type=int, default=3, metavar="N",
                        help="maximum ground-term nesting depth (default 3)")
    common.add_argument("--refute-steps", type=int, default=50000, metavar="N",
                        help="maximum created ground clauses (default 50000)")
    common.add_argument("--model-size", type=int, default=5, metavar="N",
                        help="maximum model size to search (default 5)")
    common.add_argument("--format", choices=("json", "text"), default="text",
                        help="report format (default text)")
    sub = parser.add_subparsers(dest="command")
    p_classify = sub.add_parser("classify", parents=[common],
                                help="classify a single formula")
    p_classify.add_argument("formula", help="formula text, e.g. 'not (x in x)'")
    p_run = sub.add_parser("run", parents=[common],
                           help="classify every entry of a corpus file")
    p_run.add_argument("corpus", help="path to a corpus file")
    p_audit = sub.add_parser("audit-1jt", parents=[common],
                             help="audit that no entry and its negation "
                                  "are both refuted")
    p_audit.add_argument("corpus", help="path to a corpus file")
    return parser


def _read_corpus(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_corpus_lenient(handle.read())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.seed_corpus:
        with open(args.seed_corpus, "w", encoding="utf-8") as handle:
            handle.write(BUNDLED_CORPUS_TEXT)
        print(f"wrote bundled corpus to {args.seed_corpus}")
        return 0

    if not args.command:
        parser.print_usage(sys.stderr)
        return 2

    config = Config(args.refute_depth, args.refute_steps, args.model_size)
    pipeline = Pipeline(config)

    if args.command == "classify":
        entry = CorpusEntry("input", args.formula)
        report = pipeline.classify_entry(entry)
        payload = {"config": config.to_dict(),
                   "matcher_limits": MATCHER_LIMITS,
                   "report": report}
        if args.format == "json":
            sys.stdout.write(_json_dump(payload))
        else:
            print(_classify_text(report))
        if report.get("error"):
            print(f"error: {report['error']}", file=sys.stderr)
            return 2
        return 0

    try:
        entries, problems = _read_corpus(args.corpus)
    except OSError as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return 2

    if args.command == "run":
        report = pipeline.run_corpus(entries, problems)
        if args.format == "json":
            sys.stdout.write(_json_dump(report))
        else:
            print(_run_text(report))
        return 1 if report["summary"]["expected_mismatches"] else 0

    if args.command == "audit-1jt":
        report = pipeline.audit_1jt(entries)
        if args.format == "json":
            sys.stdout.write(_json_dump(report))
        else:
            print(_audit_text(report))
        return 1 if report["status"] != "PASS" else 0

    parser.print_usage(sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
