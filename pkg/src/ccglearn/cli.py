"""Batch experiment harness.

Commands:
  train <config>                                      run a configured experiment
  parse <model> <lexicon> <ontology> "<sentence>"     parse one sentence
  evaluate <model> <lexicon> <ontology> <testset>     exact-match evaluation
  lexicon <lexicon> <ontology> [--factored]           inspect a lexicon

Exit codes: 0 success, 1 input/IO error, 2 runtime training error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .chart import ParseOptions, complete_parses, parse_chart
from .config import load_config
from .data import load_supervised, load_validation, tokenize
from .grammar import DEFAULT_ATOMS, parse_syntax
from .lambdas import print_expression
from .learning import TrainingError, evaluate, train_supervised, train_validation_driven
from .lexicon import Lexicon, factor_entry
from .model import Model
from .semtypes import Ontology


class _ArgumentParser(argparse.ArgumentParser):
    # bad usage is an input error: exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="ccglearn",
                             description="CCG semantic parsing experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="train from a config file")
    train.add_argument("config")
    train.set_defaults(func=cmd_train)

    parse = sub.add_parser("parse", help="parse a sentence with saved artifacts")
    parse.add_argument("model")
    parse.add_argument("lexicon")
    parse.add_argument("ontology")
    parse.add_argument("sentence")
    parse.add_argument("--k", type=int, default=1, help="results to print")
    parse.add_argument("--beam", type=int, default=50, help="beam size, 0 = unbounded")
    parse.set_defaults(func=cmd_parse)

    ev = sub.add_parser("evaluate", help="exact-match evaluation on a test set")
    ev.add_argument("model")
    ev.add_argument("lexicon")
    ev.add_argument("ontology")
    ev.add_argument("testset")
    ev.add_argument("--beam", type=int, default=50)
    ev.add_argument("--out", default="outcomes.tsv", help="per-example outcomes file")
    ev.set_defaults(func=cmd_evaluate)

    lex = sub.add_parser("lexicon", help="print a lexicon in canonical form")
    lex.add_argument("lexicon")
    lex.add_argument("ontology")
    lex.add_argument("--factored", action="store_true",
                     help="print lexemes and templates instead of entries")
    lex.set_defaults(func=cmd_lexicon)
    return parser


def _options(lexicon: Lexicon, beam: int, root_names=("S",)) -> ParseOptions:
    roots = tuple(parse_syntax(name, DEFAULT_ATOMS) for name in root_names)
    return ParseOptions(beam_size=beam if beam > 0 else None,
                        max_lexical_span=max(4, lexicon.max_tokens()),
                        root_syntaxes=roots)


def _write_metrics(path: Path, metrics: dict[str, float]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for key in sorted(metrics):
            handle.write(f"{key}={metrics[key]:.3f}\n")


def cmd_train(args) -> int:
    config = load_config(args.config)
    atoms = DEFAULT_ATOMS | frozenset(config.atomic_categories)
    ontology = Ontology.load(config.ontology, permissive=config.permissive_constants)
    seed = Lexicon.load(config.seed_lexicon, ontology, atoms)
    params = config.train_params()

    if config.trainer == "supervised":
        data = load_supervised(config.train, ontology)
        model, lexicon, report = train_supervised(data, seed, params)
    else:
        data = load_validation(config.train, ontology)
        model, lexicon, report = train_validation_driven(data, seed, params)

    metrics = dict(report.final_metrics)
    if config.test is not None:
        test_data = load_supervised(config.test, ontology)
        test_report = evaluate(model, lexicon, test_data, params)
        metrics["test_accuracy"] = test_report.accuracy
        metrics["test_coverage"] = test_report.coverage

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    model.save(out / "model.tsv")
    lexicon.save(out / "lexicon.lex")
    (out / "train.log").write_text(report.to_log(), encoding="utf-8")
    _write_metrics(out / "metrics.txt", metrics)

    for line in report.to_log().splitlines():
        print(line)
    print(" ".join(f"{key}={metrics[key]:.3f}" for key in sorted(metrics)))
    print(f"artifacts written to {out}")
    return 0


def cmd_parse(args) -> int:
    ontology = Ontology.load(args.ontology)
    lexicon = Lexicon.load(args.lexicon, ontology)
    model = Model.load(args.model)
    tokens = tokenize(args.sentence)
    if not tokens:
        raise ValueError("empty sentence")
    if args.k < 1:
        raise ValueError("--k must be >= 1")
    chart = parse_chart(tokens, lexicon, model, _options(lexicon, args.beam))
    results = complete_parses(chart)
    if not results:
        print("NO PARSE")
        return 0
    for result in results[:args.k]:
        print(f"{result.score:.6f}\t{print_expression(result.logical_form)}")
    return 0


def cmd_evaluate(args) -> int:
    ontology = Ontology.load(args.ontology)
    lexicon = Lexicon.load(args.lexicon, ontology)
    model = Model.load(args.model)
    test = load_supervised(args.testset, ontology)
    report = evaluate(model, lexicon, test,
                      options=_options(lexicon, args.beam))
    print(report.summary())
    with open(args.out, "w", encoding="utf-8") as handle:
        for outcome in report.outcomes:
            handle.write(outcome.line() + "\n")
    return 0


def cmd_lexicon(args) -> int:
    ontology = Ontology.load(args.ontology)
    lexicon = Lexicon.load(args.lexicon, ontology)
    if not args.factored:
        for entry in lexicon.sorted_entries():
            print(entry)
        return 0
    lexemes = {}
    templates = {}
    for entry in lexicon.sorted_entries():
        lexeme, template = factor_entry(entry)
        lexemes.setdefault(str(lexeme), lexeme)
        templates.setdefault(template.canonical, template)
    print("# lexemes")
    for key in sorted(lexemes):
        print(key)
    print("# templates")
    for key in sorted(templates):
        print(key)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TrainingError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
