"""Beam-pruned CKY chart parsing over a lexicon and the four combinators.

Cells are keyed by span; items within a cell are packed by canonical
category, keeping every backpointer and the Viterbi max score.  Pruning
keeps the ``beam_size`` best items per cell by score, ties broken by
canonical category text, which makes charts fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .grammar import COMBINATORS, Atomic, Category, SyntacticCategory
from .lambdas import LogicalExpression, print_expression, simplify
from .lexicon import LexicalEntry, Lexicon
from .model import FeatureVector, Model, vsum


@dataclass(frozen=True)
class ParseOptions:
    beam_size: int | None = 50  # None = unbounded
    max_lexical_span: int = 4
    root_syntaxes: tuple[SyntacticCategory, ...] = (Atomic("S"),)

    def __post_init__(self):
        if self.beam_size is not None and self.beam_size < 1:
            raise ValueError("beam_size must be >= 1 or None")
        if self.max_lexical_span < 1:
            raise ValueError("max_lexical_span must be >= 1")


class Backpointer:
    """One way of building an item: a lexical entry, or a rule over two
    child items.  Carries the step's features and their model score."""

    __slots__ = ("rule", "entry", "left", "right", "features", "step_score")

    def __init__(self, rule, entry, left, right, features, step_score):
        self.rule = rule
        self.entry = entry
        self.left = left
        self.right = right
        self.features = features
        self.step_score = step_score

    @property
    def is_lexical(self) -> bool:
        return self.entry is not None


class ChartItem:
    __slots__ = ("span", "category", "viterbi", "backpointers")

    def __init__(self, span, category: Category):
        self.span = span
        self.category = category
        self.viterbi = float("-inf")
        self.backpointers: list[Backpointer] = []

    def add_backpointer(self, bp: Backpointer, total: float) -> None:
        self.backpointers.append(bp)
        if total > self.viterbi:
            self.viterbi = total

    def __repr__(self):
        return f"ChartItem({self.span}, {self.category.canonical}, {self.viterbi})"


class Chart:
    def __init__(self, tokens, options: ParseOptions):
        self.tokens = tuple(tokens)
        self.options = options
        self._cells: dict[tuple[int, int], list[ChartItem]] = {}

    def cell(self, start: int, end: int) -> list[ChartItem]:
        return self._cells.get((start, end), [])

    def root_cell(self) -> list[ChartItem]:
        return self.cell(0, len(self.tokens))

    def spans(self):
        return sorted(self._cells)


class Derivation:
    """A parse tree node: lexical leaf (rule "lex") or combinator application.
    Features and score are sums over all steps in the subtree."""

    __slots__ = ("rule", "category", "span", "entry", "children",
                 "features", "score", "signature")

    def __init__(self, rule, category, span, entry, children,
                 features, score, signature):
        self.rule = rule
        self.category = category
        self.span = span
        self.entry = entry
        self.children = children
        self.features = features
        self.score = score
        self.signature = signature

    @classmethod
    def leaf(cls, entry: LexicalEntry, span, features, step_score) -> "Derivation":
        signature = f"[{span[0]}:{span[1]} lex {entry.category.canonical}]"
        return cls("lex", entry.category, span, entry, (), dict(features),
                   step_score, signature)

    @classmethod
    def branch(cls, rule, category, left: "Derivation", right: "Derivation",
               features, step_score) -> "Derivation":
        span = (left.span[0], right.span[1])
        signature = (f"[{span[0]}:{span[1]} {rule} {category.canonical} "
                     f"{left.signature} {right.signature}]")
        total_features = vsum([left.features, right.features, features])
        score = left.score + right.score + step_score
        return cls(rule, category, span, None, (left, right),
                   total_features, score, signature)

    def leaves(self) -> list["Derivation"]:
        if self.rule == "lex":
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def entries(self) -> list[LexicalEntry]:
        return [leaf.entry for leaf in self.leaves()]

    def __repr__(self):
        return f"Derivation({self.signature})"


@dataclass
class ParseResult:
    logical_form: LogicalExpression
    derivation: Derivation
    score: float

    @property
    def features(self) -> FeatureVector:
        return self.derivation.features


def parse_chart(tokens, lexicon: Lexicon, model: Model,
                options: ParseOptions | None = None) -> Chart:
    """Standard CKY: seed lexical matches for spans up to max_lexical_span,
    close each cell under the combinators, prune to the beam."""
    if options is None:
        options = ParseOptions()
    tokens = tuple(t.lower() for t in tokens)
    if not tokens:
        raise ValueError("cannot parse an empty token sequence")
    n = len(tokens)
    chart = Chart(tokens, options)

    for length in range(1, n + 1):
        for start in range(0, n - length + 1):
            end = start + length
            items: dict[str, ChartItem] = {}

            def merge(category: Category, bp: Backpointer, total: float):
                item = items.get(category.canonical)
                if item is None:
                    item = ChartItem((start, end), category)
                    items[category.canonical] = item
                item.add_backpointer(bp, total)

            if length <= options.max_lexical_span:
                for entry in lexicon.lookup(tokens[start:end]):
                    features = model.features_for_entry(entry)
                    step = model.score(features)
                    merge(entry.category,
                          Backpointer(None, entry, None, None, features, step),
                          step)
            for split in range(start + 1, end):
                for left in chart.cell(start, split):
                    for right in chart.cell(split, end):
                        for rule, combine in COMBINATORS:
                            category = combine(left.category, right.category)
                            if category is None:
                                continue
                            features = model.features_for_rule(rule)
                            step = model.score(features)
                            merge(category,
                                  Backpointer(rule, None, left, right, features, step),
                                  left.viterbi + right.viterbi + step)

            cell = sorted(items.values(),
                          key=lambda item: (-item.viterbi, item.category.canonical))
            if options.beam_size is not None:
                cell = cell[:options.beam_size]
            chart._cells[(start, end)] = cell
    return chart


def _kbest(item: ChartItem, k: int, memo: dict) -> list[Derivation]:
    """Up to k best derivations of an item, sorted by score descending with
    signature tie-breaks; exact within the pruned chart."""
    key = (id(item), k)
    cached = memo.get(key)
    if cached is not None:
        return cached
    candidates: list[Derivation] = []
    for bp in item.backpointers:
        if bp.is_lexical:
            candidates.append(Derivation.leaf(bp.entry, item.span,
                                              bp.features, bp.step_score))
        else:
            for left in _kbest(bp.left, k, memo):
                for right in _kbest(bp.right, k, memo):
                    candidates.append(Derivation.branch(
                        bp.rule, item.category, left, right,
                        bp.features, bp.step_score))
    candidates.sort(key=lambda d: (-d.score, d.signature))
    result = candidates[:k]
    memo[key] = result
    return result


def extract_derivations(chart: Chart, k: int) -> list[Derivation]:
    """The k best derivations over all full-span items."""
    if k < 1:
        raise ValueError("k must be >= 1")
    memo: dict = {}
    candidates: list[Derivation] = []
    for item in chart.root_cell():
        candidates.extend(_kbest(item, k, memo))
    candidates.sort(key=lambda d: (-d.score, d.signature))
    return candidates[:k]


def root_results(chart: Chart, k: int,
                 root_syntaxes: tuple[SyntacticCategory, ...] | None = None
                 ) -> list[ParseResult]:
    """Up to k best derivations per root item as ParseResults, best first.
    Unlike complete_parses this does not merge alpha-equivalent logical
    forms, so alternate derivations of the same form are all visible."""
    if root_syntaxes is None:
        root_syntaxes = chart.options.root_syntaxes
    memo: dict = {}
    out: list[ParseResult] = []
    for item in chart.root_cell():
        if item.category.syntax not in root_syntaxes:
            continue
        logical_form = simplify(item.category.semantics)
        for derivation in _kbest(item, k, memo):
            out.append(ParseResult(logical_form, derivation, derivation.score))
    out.sort(key=lambda r: (-r.score, r.derivation.signature))
    return out


def complete_parses(chart: Chart,
                    root_syntaxes: tuple[SyntacticCategory, ...] | None = None
                    ) -> list[ParseResult]:
    """Full-span items with a root syntax as ParseResults, best first;
    alpha-equivalent logical forms are merged keeping the highest-scoring
    derivation."""
    if root_syntaxes is None:
        root_syntaxes = chart.options.root_syntaxes
    memo: dict = {}
    candidates = []
    for item in chart.root_cell():
        if item.category.syntax not in root_syntaxes:
            continue
        derivation = _kbest(item, 1, memo)[0]
        logical_form = simplify(item.category.semantics)
        candidates.append((print_expression(logical_form),
                           ParseResult(logical_form, derivation, item.viterbi)))
    candidates.sort(key=lambda pair: (-pair[1].score, pair[0],
                                      pair[1].derivation.signature))
    results: list[ParseResult] = []
    seen: set[str] = set()
    for text, result in candidates:
        if text not in seen:
            seen.add(text)
            results.append(result)
    return results


def max_scoring_valid(results: list[ParseResult],
                      validator: Callable[[ParseResult], bool]) -> ParseResult | None:
    """First (highest-scoring) result accepted by the validator, if any.
    Validator exceptions propagate."""
    for result in results:
        if validator(result):
            return result
    return None
