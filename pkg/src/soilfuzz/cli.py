"""Batch command-line front end.

Reads samples from CSV (columns ``id,p2mm,p425,p075,ll,pl[,pi][,class]``;
a missing pi is computed as ll - pl), classifies them against a preset or a
rule file, dumps membership tables, or induces a rule base from labeled
rows.  Output is byte-deterministic for identical inputs and flags.

Exit codes: 0 success, 2 unreadable input or bad usage, 3 invalid rule
file, 4 row validation failures (including missing columns).
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dsl, hrb
from .errors import SampleError, SoilFuzzError
from .render import fmt_degree, fmt_score, round4
from .rules import Aggregator, RuleBase, search_rules

REQUIRED_COLUMNS = ("id", "p2mm", "p425", "p075", "ll", "pl")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RULES = 3
EXIT_ROWS = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class SampleRow:
    row: int
    id: str
    sample: hrb.SoilSample
    label: str | None


def read_samples(stream) -> tuple[list[SampleRow], list[str], bool]:
    """Parse a sample CSV into rows, per-row diagnostics, and a class flag.

    Diagnostics carry 1-based data row numbers; a missing required column
    fails the whole file.
    """
    reader = csv.DictReader(stream)
    fields = [f.strip() for f in reader.fieldnames or []]
    missing = [col for col in REQUIRED_COLUMNS if col not in fields]
    if missing:
        raise CliError(EXIT_ROWS, f"missing column(s): {', '.join(missing)}")
    has_class = "class" in fields

    rows: list[SampleRow] = []
    problems: list[str] = []
    for n, record in enumerate(reader, start=1):
        values = {}
        bad = False
        for col in ("p2mm", "p425", "p075", "ll", "pl", "pi"):
            cell = (record.get(col) or "").strip()
            if cell == "":
                if col == "pi":
                    values[col] = None
                    continue
                problems.append(f"row {n}: empty {col}")
                bad = True
                continue
            try:
                values[col] = float(cell)
            except ValueError:
                problems.append(f"row {n}: non-numeric {col}: {cell!r}")
                bad = True
        if bad:
            continue
        try:
            sample = hrb.SoilSample(**values)
        except SampleError as exc:
            problems.append(f"row {n}: {exc}")
            continue
        label = (record.get("class") or "").strip() or None
        rows.append(SampleRow(n, (record.get("id") or "").strip(), sample, label))
    return rows, problems, has_class


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from None


def _write_output(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_rows(args) -> tuple[list[SampleRow], bool]:
    rows, problems, has_class = read_samples(io.StringIO(_read_text(args.input)))
    if problems:
        for line in problems:
            print(line, file=sys.stderr)
        if not args.skip_bad_rows:
            raise CliError(EXIT_ROWS, f"{len(problems)} bad row(s) in {args.input}")
    return rows, has_class


def _preset_dir() -> str | None:
    return os.environ.get("SOILFUZZ_PRESET_DIR") or None


def _load_rulebase(args, variables) -> tuple[str, RuleBase]:
    """Resolve --rules FILE or --preset into (name, rule base)."""
    if getattr(args, "rules", None):
        try:
            rb = dsl.parse_rules(_read_text(args.rules), variables)
        except dsl.RuleParseError as exc:
            for diag in exc.diagnostics:
                print(f"{args.rules}:{diag}", file=sys.stderr)
            raise CliError(EXIT_RULES, f"invalid rule file {args.rules}") from None
        return args.rules, rb
    try:
        preset = hrb.load_preset(args.preset, directory=_preset_dir(), variables=variables)
    except (OSError, dsl.RuleParseError) as exc:
        raise CliError(EXIT_RULES, f"cannot load preset {args.preset}: {exc}") from None
    return preset.kind, preset.rulebase


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_classify(args) -> int:
    variables = hrb.load_variables(_preset_dir())
    rows, _ = _load_rows(args)

    if args.crisp:
        results = []
        for row in rows:
            subgroup = hrb.crisp_classify(row.sample)
            results.append((row, subgroup, hrb.SUBGRADE_RATINGS.get(subgroup, "")))
        if args.format == "json":
            payload = {
                "command": "classify",
                "mode": "crisp",
                "results": [
                    {
                        "id": row.id,
                        "winner": subgroup,
                        "rating": rating,
                        "a7": _a7_payload(row.sample, subgroup),
                    }
                    for row, subgroup, rating in results
                ],
            }
            _write_output(args, _json_text(payload))
        else:
            table = [["id", "winner", "rating", "a7_ll", "a7_pi"]]
            for row, subgroup, rating in results:
                a7 = subgroup.startswith("A-7")
                table.append([
                    row.id, subgroup, rating,
                    fmt_degree(row.sample.ll) if a7 else "",
                    fmt_degree(row.sample.pi) if a7 else "",
                ])
            _write_output(args, _csv_text(table))
        return EXIT_OK

    name, rb = _load_rulebase(args, variables)
    agg = Aggregator(args.agg)
    outcomes = [
        (row, hrb.classify_hrb(row.sample, rb, agg, args.pi_source, variables))
        for row in rows
    ]
    if args.format == "json":
        payload = {
            "command": "classify",
            "rules": name,
            "aggregator": agg.value,
            "pi_source": args.pi_source,
            "results": [
                {
                    "id": row.id,
                    "winner": res.subgroup,
                    "rating": res.rating,
                    "tie": res.report.tie,
                    "tied": list(res.report.tied) if res.report.tie else [],
                    "scores": {
                        cls: round4(res.report.scores[cls])
                        for cls in rb.class_order
                    },
                    "a7": _a7_payload(row.sample, res.subgroup),
                }
                for row, res in outcomes
            ],
        }
        _write_output(args, _json_text(payload))
    else:
        header = ["id", "winner", "rating", "tie", "tied_with"]
        header += list(rb.class_order) + ["a7_ll", "a7_pi"]
        table = [header]
        for row, res in outcomes:
            a7 = res.subgroup.startswith("A-7")
            record = [
                row.id,
                res.subgroup,
                res.rating,
                "true" if res.report.tie else "false",
                "|".join(res.report.tied) if res.report.tie else "",
            ]
            record += [fmt_score(res.report.scores[cls]) for cls in rb.class_order]
            record += [
                fmt_degree(row.sample.ll) if a7 else "",
                fmt_degree(row.sample.pi) if a7 else "",
            ]
            table.append(record)
        _write_output(args, _csv_text(table))
    return EXIT_OK


def _a7_payload(sample, subgroup):
    if not subgroup.startswith("A-7"):
        return None
    return {"ll": round4(sample.ll), "pi": round4(sample.pi)}


def cmd_memberships(args) -> int:
    variables = hrb.load_variables(_preset_dir())
    rows, _ = _load_rows(args)
    names = [args.variable] if args.variable else list(hrb.VARIABLE_NAMES)
    for name in names:
        if name not in variables:
            raise CliError(EXIT_INPUT, f"unknown variable {name}")

    fuzzified = [
        (row, hrb.fuzzify_sample(row.sample, args.pi_source, variables))
        for row in rows
    ]
    if args.format == "json":
        payload = {
            "command": "memberships",
            "pi_source": args.pi_source,
            "tables": [
                {
                    "variable": name,
                    "labels": list(variables[name].labels),
                    "rows": [
                        {
                            "id": row.id,
                            "degrees": {
                                lab: round4(mv[name].entries[lab])
                                for lab in variables[name].labels
                            },
                        }
                        for row, mv in fuzzified
                    ],
                }
                for name in names
            ],
        }
        _write_output(args, _json_text(payload))
    else:
        table = []
        for name in names:
            labels = variables[name].labels
            table.append(["variable", "id", *labels])
            for row, mv in fuzzified:
                table.append(
                    [name, row.id]
                    + [fmt_degree(mv[name].entries[lab]) for lab in labels]
                )
        _write_output(args, _csv_text(table))
    return EXIT_OK


def cmd_rules(args) -> int:
    variables = hrb.load_variables(_preset_dir())
    _, rb = _load_rulebase(args, variables)
    _write_output(args, dsl.serialize(rb, variables))
    return EXIT_OK


def cmd_induce(args) -> int:
    variables = hrb.load_variables(_preset_dir())
    rows, has_class = _load_rows(args)
    if not has_class:
        raise CliError(EXIT_ROWS, "missing class column: induce needs labeled rows")
    unlabeled = [row.row for row in rows if row.label is None]
    if unlabeled:
        raise CliError(
            EXIT_ROWS,
            f"empty class cell on row(s): {', '.join(map(str, unlabeled))}",
        )
    labeled = [
        (hrb.fuzzify_sample(row.sample, args.pi_source, variables), row.label)
        for row in rows
    ]
    if not labeled:
        raise CliError(EXIT_ROWS, "no labeled rows to induce from")

    result = search_rules(
        labeled,
        variables,
        rules_per_class=args.rules_per_class,
        iterations=args.iters,
        seed=args.seed,
        agg=Aggregator(args.agg),
    )
    text = (
        f"# induced: seed={args.seed} iterations={args.iters} "
        f"rules_per_class={args.rules_per_class} agg={args.agg}\n"
        f"# training accuracy: {fmt_score(result.score)}\n"
        + dsl.serialize(result.rulebase, variables)
    )
    _write_output(args, text)
    print(f"training accuracy: {fmt_score(result.score)}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soilfuzz",
        description="Fuzzy rule-based HRB (AASHTO M145) soil classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("input", metavar="IN", help="input CSV path")
        p.add_argument("-o", "--output", help="output path (default: stdout)")
        p.add_argument(
            "--skip-bad-rows", action="store_true",
            help="skip rows that fail validation instead of exiting 4",
        )

    def add_ruleset(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument(
            "--preset", choices=("paper", "calibrated"), default="paper",
            help="shipped rule preset (default: paper)",
        )
        group.add_argument("--rules", help="custom .frules file")

    classify_p = sub.add_parser("classify", help="classify samples")
    add_ruleset(classify_p)
    classify_p.add_argument("--agg", choices=("min", "product", "mean"), default="mean")
    classify_p.add_argument("--pi-source", choices=("pi", "pl"), default="pi", dest="pi_source")
    classify_p.add_argument(
        "--crisp", action="store_true",
        help="use the crisp M145 table instead of fuzzy rules",
    )
    classify_p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_io(classify_p)
    classify_p.set_defaults(func=cmd_classify)

    memb_p = sub.add_parser("memberships", help="dump membership tables")
    memb_p.add_argument("--variable", help="limit output to one variable")
    memb_p.add_argument("--pi-source", choices=("pi", "pl"), default="pi", dest="pi_source")
    memb_p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_io(memb_p)
    memb_p.set_defaults(func=cmd_memberships)

    rules_p = sub.add_parser("rules", help="print a rule base in canonical form")
    add_ruleset(rules_p)
    rules_p.add_argument("-o", "--output", help="output path (default: stdout)")
    rules_p.set_defaults(func=cmd_rules)

    induce_p = sub.add_parser("induce", help="induce rules from labeled samples")
    induce_p.add_argument("--seed", type=int, required=True)
    induce_p.add_argument("--iters", type=int, default=1000)
    induce_p.add_argument("--rules-per-class", type=int, default=1, dest="rules_per_class")
    induce_p.add_argument("--agg", choices=("min", "product", "mean"), default="mean")
    induce_p.add_argument("--pi-source", choices=("pi", "pl"), default="pi", dest="pi_source")
    add_io(induce_p)
    induce_p.set_defaults(func=cmd_induce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"soilfuzz: {exc}", file=sys.stderr)
        return exc.code
    except SoilFuzzError as exc:
        print(f"soilfuzz: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
