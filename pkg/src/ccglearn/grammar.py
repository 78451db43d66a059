"""CCG syntactic categories, categories with semantics, and the binary
combinators: forward/backward application and first-order composition.

Syntax matching in combinators is plain structural equality; there is no
feature unification, type raising or crossed composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lambdas import (
    LogicalExpression,
    apply_exp,
    compose_exp,
    is_closed,
    parse_expression,
    print_expression,
)
from .semtypes import FunctionType, Ontology

DEFAULT_ATOMS = frozenset({"S", "N", "NP", "PP"})
FORWARD = "/"
BACKWARD = "\\"


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class SyntacticCategory:
    pass


@dataclass(frozen=True)
class Atomic(SyntacticCategory):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Slash(SyntacticCategory):
    result: SyntacticCategory
    direction: str  # FORWARD or BACKWARD
    argument: SyntacticCategory

    def __str__(self):
        return f"{_wrap(self.result)}{self.direction}{_wrap(self.argument)}"


def _wrap(syntax: SyntacticCategory) -> str:
    text = str(syntax)
    return f"({text})" if isinstance(syntax, Slash) else text


def syntax_arity(syntax: SyntacticCategory) -> int:
    """Number of arguments along the result spine: NP -> 0, (S\\NP)/NP -> 2."""
    arity = 0
    while isinstance(syntax, Slash):
        arity += 1
        syntax = syntax.result
    return arity


def parse_syntax(text: str, atoms: frozenset[str] | None = None) -> SyntacticCategory:
    """Read a category such as ``(S\\NP)/NP``; slashes are left-associative."""
    if atoms is None:
        atoms = DEFAULT_ATOMS
    text = text.strip()
    pos = 0

    def error(message, at):
        raise CategoryError(f"{message} at offset {at} in category {text!r}")

    def skip_ws(p):
        while p < len(text) and text[p] == " ":
            p += 1
        return p

    def primary(p):
        p = skip_ws(p)
        if p >= len(text):
            error("unexpected end of category", p)
        if text[p] == "(":
            node, p = sequence(p + 1)
            p = skip_ws(p)
            if p >= len(text) or text[p] != ")":
                error("expected ')'", p)
            return node, p + 1
        start = p
        while p < len(text) and text[p] not in "/\\() ":
            p += 1
        name = text[start:p]
        if not name:
            error(f"expected category name, found {text[p]!r}", p)
        if name not in atoms:
            error(f"unknown atomic category {name!r}", start)
        return Atomic(name), p

    def sequence(p):
        node, p = primary(p)
        while True:
            p = skip_ws(p)
            if p < len(text) and text[p] in (FORWARD, BACKWARD):
                direction = text[p]
                arg, p = primary(p + 1)
                node = Slash(node, direction, arg)
            else:
                return node, p

    parsed, end = sequence(pos)
    end = skip_ws(end)
    if end != len(text):
        error("trailing characters after category", end)
    return parsed


class Category:
    """A syntactic category paired with its lambda-calculus semantics."""

    __slots__ = ("syntax", "semantics", "_canonical")

    def __init__(self, syntax: SyntacticCategory, semantics: LogicalExpression):
        if isinstance(syntax, Slash) and not isinstance(semantics.type, FunctionType):
            raise CategoryError(
                f"slash category {syntax} needs function-typed semantics, "
                f"got {semantics.type}")
        self.syntax = syntax
        self.semantics = semantics
        self._canonical = None

    @property
    def canonical(self) -> str:
        """Printed form with renumbered variables; two categories are
        interchangeable exactly when their canonical texts match."""
        if self._canonical is None:
            self._canonical = f"{self.syntax} : {print_expression(self.semantics)}"
        return self._canonical

    def __eq__(self, other):
        return isinstance(other, Category) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"Category({self.canonical})"

    def __str__(self):
        return self.canonical


def parse_category_text(text: str, ontology: Ontology,
                        atoms: frozenset[str] | None = None) -> Category:
    """Read ``SYNTAX : EXPRESSION``, validating both halves."""
    syntax_text, sep, expr_text = text.partition(":")
    if not sep:
        raise CategoryError(f"category {text!r} must be written 'SYNTAX : EXPRESSION'")
    syntax = parse_syntax(syntax_text, atoms)
    semantics = parse_expression(expr_text.strip(), ontology)
    if not is_closed(semantics):
        raise CategoryError(f"category semantics must be closed: {text!r}")
    return Category(syntax, semantics)


# --- combinators ------------------------------------------------------------

def forward_application(left: Category, right: Category) -> Category | None:
    """A/B + B => A"""
    if not (isinstance(left.syntax, Slash) and left.syntax.direction == FORWARD):
        return None
    if left.syntax.argument != right.syntax:
        return None
    semantics = apply_exp(left.semantics, right.semantics)
    if semantics is None:
        return None
    return Category(left.syntax.result, semantics)


def backward_application(left: Category, right: Category) -> Category | None:
    """B + A\\B => A"""
    if not (isinstance(right.syntax, Slash) and right.syntax.direction == BACKWARD):
        return None
    if right.syntax.argument != left.syntax:
        return None
    semantics = apply_exp(right.semantics, left.semantics)
    if semantics is None:
        return None
    return Category(right.syntax.result, semantics)


def forward_composition(left: Category, right: Category) -> Category | None:
    """A/B + B/C => A/C (first order only)"""
    if not (isinstance(left.syntax, Slash) and left.syntax.direction == FORWARD):
        return None
    if not (isinstance(right.syntax, Slash) and right.syntax.direction == FORWARD):
        return None
    if left.syntax.argument != right.syntax.result:
        return None
    semantics = compose_exp(left.semantics, right.semantics)
    if semantics is None:
        return None
    return Category(Slash(left.syntax.result, FORWARD, right.syntax.argument), semantics)


def backward_composition(left: Category, right: Category) -> Category | None:
    """B\\C + A\\B => A\\C (first order only)"""
    if not (isinstance(left.syntax, Slash) and left.syntax.direction == BACKWARD):
        return None
    if not (isinstance(right.syntax, Slash) and right.syntax.direction == BACKWARD):
        return None
    if right.syntax.argument != left.syntax.result:
        return None
    semantics = compose_exp(right.semantics, left.semantics)
    if semantics is None:
        return None
    return Category(Slash(right.syntax.result, BACKWARD, left.syntax.argument), semantics)


# Rule names appear in chart backpointers and RULE features.
COMBINATORS: tuple[tuple[str, object], ...] = (
    ("fa", forward_application),
    ("ba", backward_application),
    ("fc", forward_composition),
    ("bc", backward_composition),
)

RULES_BY_NAME = dict(COMBINATORS)
