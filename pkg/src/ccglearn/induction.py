"""Lexical hypothesis generation.

Two generators: template-based GENLEX, which crosses token spans with
templates filled from the labeled logical form's constants, and category
splitting, which decomposes a multi-token entry into a function/argument
pair that recombines to the original by application.  Both are pure and
emit deterministically ordered, duplicate-free lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .grammar import (
    BACKWARD,
    FORWARD,
    Atomic,
    Category,
    Slash,
    backward_application,
    forward_application,
    syntax_arity,
)
from .lambdas import (
    Constant,
    Lambda,
    Literal,
    LogicalExpression,
    Variable,
    alpha_equal,
    constants_of,
    free_variables,
    max_variable_id,
)
from .lexicon import (
    ORIGIN_SPLIT,
    LexicalEntry,
    Lexeme,
    LexicalTemplate,
    Lexicon,
    factor_entry,
    instantiate,
)
from .semtypes import E, FunctionType, Ontology, SemanticType, T


@dataclass(frozen=True)
class GenlexConfig:
    max_span: int = 4
    max_entries_per_example: int = 2000

    def __post_init__(self):
        if self.max_span < 1 or self.max_entries_per_example < 1:
            raise ValueError("genlex bounds must be positive")


@dataclass(frozen=True)
class SplitConstraints:
    max_new_arity: int = 3
    max_abstracted_vars: int = 2

    def __post_init__(self):
        if self.max_new_arity < 0 or self.max_abstracted_vars < 0:
            raise ValueError("split constraints must be >= 0")


def collect_templates(seed_lexicon: Lexicon) -> list[LexicalTemplate]:
    """Factor every seed entry and keep the distinct templates, sorted by
    canonical text."""
    templates: dict[str, LexicalTemplate] = {}
    for entry in seed_lexicon.sorted_entries():
        _, template = factor_entry(entry)
        templates.setdefault(template.canonical, template)
    return [templates[key] for key in sorted(templates)]


def genlex(tokens, labeled_lf: LogicalExpression, templates,
           config: GenlexConfig | None = None) -> list[LexicalEntry]:
    """Candidate entries for a (sentence, logical form) pair: every token
    span of length <= max_span crossed with every template, placeholders
    filled by every type-compatible ordered selection (with repetition) of
    the labeled form's constants.

    Output order is (span start, span length, template canonical text,
    constant names); duplicates are dropped and the list is truncated to
    max_entries_per_example.
    """
    if config is None:
        config = GenlexConfig()
    tokens = tuple(t.lower() for t in tokens)
    pool: list[Constant] = []
    seen_constants: set = set()
    for constant in constants_of(labeled_lf):
        key = (constant.name, constant.type)
        if key not in seen_constants:
            seen_constants.add(key)
            pool.append(constant)
    pool.sort(key=lambda c: (c.name, str(c.type)))
    ordered_templates = sorted(templates, key=lambda t: t.canonical)

    out: list[LexicalEntry] = []
    seen: set = set()
    for start in range(len(tokens)):
        for length in range(1, min(config.max_span, len(tokens) - start) + 1):
            span = tokens[start:start + length]
            for template in ordered_templates:
                slots = [[c for c in pool if c.type == slot_type]
                         for slot_type in template.placeholder_types()]
                for combo in itertools.product(*slots):
                    entry = instantiate(template, Lexeme(span, combo))
                    if entry is None or entry.key in seen:
                        continue
                    seen.add(entry.key)
                    out.append(entry)
                    if len(out) >= config.max_entries_per_example:
                        return out
    return out


_ATOM_FOR_TYPE_DEFAULT = Atomic("NP")


def atomic_for_type(semtype: SemanticType) -> Atomic:
    """Fabricated syntax for split-off categories: e->NP, t->S, <e,t>->N,
    anything else NP.  Syntax only gates combination; semantics carries the
    learning signal."""
    if semtype == E:
        return Atomic("NP")
    if semtype == T:
        return Atomic("S")
    if semtype == FunctionType(E, T):
        return Atomic("N")
    return _ATOM_FOR_TYPE_DEFAULT


def _positions(expr: LogicalExpression, scope=(), path=()):
    """Every subexpression with the binders in scope above it (outermost
    first) and the path used to rebuild the tree around it."""
    yield expr, scope, path
    if isinstance(expr, Lambda):
        yield from _positions(expr.body, scope + (expr.parameter,), path + ("body",))
    elif isinstance(expr, Literal):
        yield from _positions(expr.predicate, scope, path + (("pred", 0),))
        for i, arg in enumerate(expr.arguments):
            yield from _positions(arg, scope, path + (("arg", i),))


def _replace_at(expr: LogicalExpression, path,
                replacement: LogicalExpression) -> LogicalExpression:
    if not path:
        return replacement
    step, rest = path[0], path[1:]
    if step == "body":
        assert isinstance(expr, Lambda)
        return Lambda(expr.parameter, _replace_at(expr.body, rest, replacement))
    kind, index = step
    assert isinstance(expr, Literal)
    if kind == "pred":
        return Literal(_replace_at(expr.predicate, rest, replacement), expr.arguments)
    arguments = list(expr.arguments)
    arguments[index] = _replace_at(arguments[index], rest, replacement)
    return Literal(expr.predicate, arguments)


def enumerate_splits(entry: LexicalEntry,
                     constraints: SplitConstraints | None = None
                     ) -> list[tuple[LexicalEntry, LexicalEntry]]:
    """All (left, right) entry pairs obtained by splitting the tokens at one
    point and extracting one subexpression of the semantics into its own
    category; each returned pair recombines by exactly one application into
    a category alpha-equal to the original (verified before emission).
    Single-token entries cannot split."""
    if constraints is None:
        constraints = SplitConstraints()
    tokens = entry.tokens
    if len(tokens) < 2:
        return []
    source = entry.category.semantics
    original_syntax = entry.category.syntax
    if syntax_arity(original_syntax) + 1 > constraints.max_new_arity:
        return []
    fresh_id = max_variable_id(source) + 1

    # (function expr, closed argument expr, fabricated syntax) choices shared
    # by all token split points
    extractions: list[tuple[LogicalExpression, LogicalExpression, Atomic]] = []
    for subexpr, scope, path in _positions(source):
        if isinstance(subexpr, Constant) and Ontology.is_connective(subexpr.name):
            continue
        free_ids = set(free_variables(subexpr))
        abstracted: list[Variable] = []
        for binder in reversed(scope):  # innermost binder wins under shadowing
            if binder.id in free_ids and all(v.id != binder.id for v in abstracted):
                abstracted.append(binder)
        abstracted.reverse()
        if len(abstracted) > constraints.max_abstracted_vars:
            continue
        closed = subexpr
        for binder in reversed(abstracted):
            closed = Lambda(binder, closed)
        hole = Variable(fresh_id, closed.type)
        application = Literal(hole, abstracted) if abstracted else hole
        function = Lambda(hole, _replace_at(source, path, application))
        argument_syntax = atomic_for_type(closed.type)
        extractions.append((function, closed, argument_syntax))

    pairs: list[tuple[LexicalEntry, LexicalEntry]] = []
    seen: set = set()

    def emit(left: LexicalEntry, right: LexicalEntry, combine) -> None:
        recombined = combine(left.category, right.category)
        if recombined is None or recombined.syntax != original_syntax:
            return
        if not alpha_equal(recombined.semantics, source):
            return
        key = (left.key, right.key)
        if key not in seen:
            seen.add(key)
            pairs.append((left, right))

    for point in range(1, len(tokens)):
        left_tokens, right_tokens = tokens[:point], tokens[point:]
        for function, closed, argument_syntax in extractions:
            forward = Category(Slash(original_syntax, FORWARD, argument_syntax), function)
            backward = Category(Slash(original_syntax, BACKWARD, argument_syntax), function)
            argument = Category(argument_syntax, closed)
            emit(LexicalEntry(left_tokens, forward, ORIGIN_SPLIT),
                 LexicalEntry(right_tokens, argument, ORIGIN_SPLIT),
                 forward_application)
            emit(LexicalEntry(left_tokens, argument, ORIGIN_SPLIT),
                 LexicalEntry(right_tokens, backward, ORIGIN_SPLIT),
                 backward_application)
    return pairs
