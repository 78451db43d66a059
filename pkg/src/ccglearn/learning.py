"""Online learners: a structured perceptron with GENLEX for supervised
(sentence, logical form) data, and a validation-driven margin learner for
weak supervision, where the only training signal is a black-box predicate
over parses.

Both trainers interleave two phases per example: lexical generation, which
may add entries to the persistent lexicon (entries are never removed), and a
parameter update against the current parses.  Data order is file order and
there is no shuffling, so runs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .chart import (
    ParseOptions,
    ParseResult,
    complete_parses,
    max_scoring_valid,
    parse_chart,
    root_results,
)
from .grammar import parse_syntax
from .induction import GenlexConfig, SplitConstraints, collect_templates, enumerate_splits, genlex
from .lambdas import LogicalExpression, alpha_equal, print_expression
from .lexicon import LexicalEntry, Lexicon
from .model import ALL_FAMILIES, Model, l1norm, vmean, vsub


@dataclass
class SupervisedExample:
    tokens: tuple[str, ...]
    labeled_lf: LogicalExpression

    def __post_init__(self):
        self.tokens = tuple(t.lower() for t in self.tokens)


@dataclass
class ValidationExample:
    """Weakly supervised example: a validator judges parses, and an optional
    candidate logical form feeds GENLEX (for lf-equality validation this is
    the label; otherwise splitting is the only generator)."""
    tokens: tuple[str, ...]
    validator: Callable[[ParseResult], bool]
    candidate_lf: LogicalExpression | None = None

    def __post_init__(self):
        self.tokens = tuple(t.lower() for t in self.tokens)


@dataclass
class TrainParams:
    epochs: int = 10
    beam: int | None = 50
    margin: float = 1.0
    learning_rate: float = 1.0
    genlex: GenlexConfig = field(default_factory=GenlexConfig)
    splits: SplitConstraints = field(default_factory=SplitConstraints)
    k_best: int = 10
    root_syntaxes: tuple[str, ...] = ("S",)
    features: tuple[str, ...] = ALL_FAMILIES
    seed_entry_weight: float = 1.0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.margin < 0:
            raise ValueError("margin must be >= 0")
        if self.k_best < 1:
            raise ValueError("k_best must be >= 1")

    def parse_options(self, atoms=None) -> ParseOptions:
        roots = tuple(parse_syntax(text, atoms) for text in self.root_syntaxes)
        return ParseOptions(beam_size=self.beam,
                            max_lexical_span=self.genlex.max_span,
                            root_syntaxes=roots)


@dataclass
class EpochStats:
    parsed: int
    correct: int
    updates: int
    lexicon_size: int


@dataclass
class TrainReport:
    epochs: list[EpochStats] = field(default_factory=list)
    final_metrics: dict[str, float] = field(default_factory=dict)

    def to_log(self) -> str:
        return "".join(
            f"epoch {i}: parsed={s.parsed} correct={s.correct} "
            f"updates={s.updates} lexicon={s.lexicon_size}\n"
            for i, s in enumerate(self.epochs, start=1))


class TrainingError(RuntimeError):
    """A validator raised during training; carries the example index."""

    def __init__(self, example_index: int, cause: Exception):
        super().__init__(f"validator failed on example {example_index}: {cause}")
        self.example_index = example_index
        self.cause = cause


def _add_new_entries(lexicon: Lexicon, results: list[ParseResult]) -> int:
    added = 0
    for result in results:
        for entry in result.derivation.entries():
            if entry not in lexicon:
                lexicon.add(entry)
                added += 1
    return added


def _with_candidates(lexicon: Lexicon, candidates) -> Lexicon:
    merged = lexicon.copy()
    for entry in candidates:
        merged.add(entry)
    return merged


def train_supervised(data: list[SupervisedExample], seed_lexicon: Lexicon,
                     params: TrainParams | None = None
                     ) -> tuple[Model, Lexicon, TrainReport]:
    """Structured perceptron with GENLEX lexical generation.

    Per example and epoch: (1) parse with the lexicon extended by GENLEX
    candidates; entries used by the best label-matching parses join the
    persistent lexicon; (2) re-parse with the persistent lexicon and, when
    the top parse is wrong but a correct one is reachable, update toward the
    correct parse's features and away from the top parse's.
    """
    if params is None:
        params = TrainParams()
    if not data:
        raise ValueError("training data must be non-empty")
    model = Model(families=params.features)
    model.apply_seed_prior(seed_lexicon, params.seed_entry_weight)
    lexicon = seed_lexicon.copy()
    templates = collect_templates(seed_lexicon)
    options = params.parse_options()
    report = TrainReport()
    genlex_cache: dict[int, list[LexicalEntry]] = {}

    for _ in range(params.epochs):
        parsed = correct = updates = 0
        for index, example in enumerate(data):
            label = example.labeled_lf

            def is_correct(result: ParseResult) -> bool:
                return alpha_equal(result.logical_form, label)

            candidates = genlex_cache.get(index)
            if candidates is None:
                candidates = genlex(example.tokens, label, templates, params.genlex)
                genlex_cache[index] = candidates
            gen_chart = parse_chart(example.tokens,
                                    _with_candidates(lexicon, candidates),
                                    model, options)
            gen_valid = [r for r in root_results(gen_chart, params.k_best)
                         if is_correct(r)]
            _add_new_entries(lexicon, gen_valid[:params.k_best])

            results = complete_parses(parse_chart(example.tokens, lexicon, model, options))
            if results:
                parsed += 1
                best = results[0]
                if is_correct(best):
                    correct += 1
                else:
                    best_correct = max_scoring_valid(results, is_correct)
                    if best_correct is not None:
                        model.update(vsub(best_correct.features, best.features),
                                     params.learning_rate)
                        updates += 1
            # unreachable examples are skipped silently; they show up as
            # parsed < len(data) or correct < parsed in the report
        report.epochs.append(EpochStats(parsed, correct, updates, len(lexicon)))

    final = evaluate(model, lexicon, data, params)
    report.final_metrics = {"train_accuracy": final.accuracy,
                            "train_coverage": final.coverage}
    return model, lexicon, report


def train_validation_driven(data: list[ValidationExample], seed_lexicon: Lexicon,
                            params: TrainParams | None = None
                            ) -> tuple[Model, Lexicon, TrainReport]:
    """Weakly supervised trainer driven by per-example validators.

    Lexical generation splits the entries used by currently-valid parses
    (plus GENLEX when the example carries a candidate logical form) and
    keeps whatever the top-k valid parses use.  The update is margin-driven:
    the mean features of the top-k valid parses versus the mean features of
    invalid parses that score within the margin.
    """
    if params is None:
        params = TrainParams()
    if not data:
        raise ValueError("training data must be non-empty")
    model = Model(families=params.features)
    model.apply_seed_prior(seed_lexicon, params.seed_entry_weight)
    lexicon = seed_lexicon.copy()
    templates = collect_templates(seed_lexicon)
    options = params.parse_options()
    report = TrainReport()
    genlex_cache: dict[int, list[LexicalEntry]] = {}

    def checked(validator, index):
        def call(result: ParseResult) -> bool:
            try:
                return bool(validator(result))
            except Exception as err:
                raise TrainingError(index, err) from err
        return call

    for _ in range(params.epochs):
        parsed = correct = updates = 0
        for index, example in enumerate(data):
            validator = checked(example.validator, index)

            # (1) lexical generation
            base_chart = parse_chart(example.tokens, lexicon, model, options)
            base_valid = [r for r in root_results(base_chart, params.k_best)
                          if validator(r)][:params.k_best]
            candidates: list[LexicalEntry] = []
            for result in base_valid:
                for entry in result.derivation.entries():
                    for left, right in enumerate_splits(entry, params.splits):
                        candidates.append(left)
                        candidates.append(right)
            if example.candidate_lf is not None:
                cached = genlex_cache.get(index)
                if cached is None:
                    cached = genlex(example.tokens, example.candidate_lf,
                                    templates, params.genlex)
                    genlex_cache[index] = cached
                candidates.extend(cached)
            if candidates:
                gen_chart = parse_chart(example.tokens,
                                        _with_candidates(lexicon, candidates),
                                        model, options)
                gen_valid = [r for r in root_results(gen_chart, params.k_best)
                             if validator(r)]
                _add_new_entries(lexicon, gen_valid[:params.k_best])

            # (2) margin update
            results = complete_parses(parse_chart(example.tokens, lexicon, model, options))
            if not results:
                continue
            parsed += 1
            flags = [validator(result) for result in results]
            valid = [r for r, ok in zip(results, flags) if ok]
            invalid = [r for r, ok in zip(results, flags) if not ok]
            if flags[0]:
                correct += 1
            if not valid:
                continue
            best_valid = valid[0]
            violators = [b for b in invalid
                         if b.score + params.margin * l1norm(vsub(best_valid.features,
                                                                  b.features))
                         >= best_valid.score]
            if violators:
                direction = vsub(vmean([g.features for g in valid[:params.k_best]]),
                                 vmean([b.features for b in violators]))
                model.update(direction, params.learning_rate)
                updates += 1
        report.epochs.append(EpochStats(parsed, correct, updates, len(lexicon)))

    correct_final = covered_final = 0
    for index, example in enumerate(data):
        validator = checked(example.validator, index)
        results = complete_parses(parse_chart(example.tokens, lexicon, model, options))
        if results:
            covered_final += 1
            if validator(results[0]):
                correct_final += 1
    report.final_metrics = {"train_accuracy": correct_final / len(data),
                            "train_coverage": covered_final / len(data)}
    return model, lexicon, report


@dataclass
class ExampleOutcome:
    tokens: tuple[str, ...]
    gold: LogicalExpression
    predicted: LogicalExpression | None
    correct: bool

    def line(self) -> str:
        status = "correct" if self.correct else ("wrong" if self.predicted else "noparse")
        predicted = print_expression(self.predicted) if self.predicted else "-"
        return (f"{status}\t{' '.join(self.tokens)}\t"
                f"{print_expression(self.gold)}\t{predicted}")


@dataclass
class EvalReport:
    n: int
    accuracy: float
    coverage: float
    outcomes: list[ExampleOutcome]

    def summary(self) -> str:
        return f"accuracy={self.accuracy:.3f} coverage={self.coverage:.3f} n={self.n}"


def evaluate(model: Model, lexicon: Lexicon, test: list[SupervisedExample],
             params: TrainParams | None = None,
             options: ParseOptions | None = None) -> EvalReport:
    """Exact-match evaluation: the top parse against the label, up to
    renaming of bound variables."""
    if options is None:
        options = (params or TrainParams()).parse_options()
    outcomes = []
    for example in test:
        results = complete_parses(parse_chart(example.tokens, lexicon, model, options))
        predicted = results[0].logical_form if results else None
        is_correct = predicted is not None and alpha_equal(predicted, example.labeled_lf)
        outcomes.append(ExampleOutcome(example.tokens, example.labeled_lf,
                                       predicted, is_correct))
    n = len(outcomes)
    accuracy = sum(1 for o in outcomes if o.correct) / n if n else 0.0
    coverage = sum(1 for o in outcomes if o.predicted is not None) / n if n else 0.0
    return EvalReport(n, accuracy, coverage, outcomes)
