"""Lexical entries, the factored decomposition into lexemes and templates,
and the lexicon container with factored lookup and file round-tripping.

Factoring splits an entry into its content payload (the lexeme: tokens plus
the ordered distinct constants of the semantics) and its argument structure
(the template: syntax plus the semantics with each constant occurrence
replaced by a typed placeholder ``#j``).  Logical connectives are never
abstracted.  Placeholders are represented as constants named ``#0``, ``#1``,
... so templates print, compare and type-check like ordinary terms.
"""

from __future__ import annotations

from .grammar import Category, SyntacticCategory, parse_category_text
from .lambdas import (
    Constant,
    Lambda,
    Literal,
    LogicalExpression,
    constants_of,
    is_closed,
)
from .semtypes import Ontology, SemanticType

ORIGIN_SEED = "seed"
ORIGIN_GENLEX = "induced-genlex"
ORIGIN_SPLIT = "induced-split"
_ORIGINS = (ORIGIN_SEED, ORIGIN_GENLEX, ORIGIN_SPLIT)


class LexiconError(ValueError):
    pass


def placeholder(index: int, semtype: SemanticType) -> Constant:
    return Constant(f"#{index}", semtype)


def is_placeholder(expr: LogicalExpression) -> bool:
    return isinstance(expr, Constant) and expr.name.startswith("#")


class LexicalEntry:
    """A token span mapped to a category.  Identity (equality, hashing,
    deduplication) is by tokens plus the category's canonical form; the
    origin tag is bookkeeping only."""

    __slots__ = ("tokens", "category", "origin", "_key")

    def __init__(self, tokens, category: Category, origin: str = ORIGIN_SEED):
        tokens = tuple(t.lower() for t in tokens)
        if not tokens or any((not t) or any(c.isspace() for c in t) for t in tokens):
            raise LexiconError(f"bad entry tokens {tokens!r}")
        if origin not in _ORIGINS:
            raise LexiconError(f"unknown origin {origin!r}")
        self.tokens = tokens
        self.category = category
        self.origin = origin
        self._key = (tokens, category.canonical)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, LexicalEntry) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LexicalEntry({self})"

    def __str__(self):
        return f"{' '.join(self.tokens)} :- {self.category.canonical}"


class Lexeme:
    """Tokens plus the ordered content constants they contribute."""

    __slots__ = ("tokens", "constants", "_key")

    def __init__(self, tokens, constants):
        self.tokens = tuple(t.lower() for t in tokens)
        self.constants = tuple(constants)
        for constant in self.constants:
            if Ontology.is_connective(constant.name):
                raise LexiconError(f"lexeme may not contain connective {constant.name!r}")
        self._key = (self.tokens,
                     tuple((c.name, c.type) for c in self.constants))

    @property
    def arity(self) -> int:
        return len(self.constants)

    def __eq__(self, other):
        return isinstance(other, Lexeme) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Lexeme({self})"

    def __str__(self):
        names = ", ".join(f"{c.name}:{c.type}" for c in self.constants)
        return f"({' '.join(self.tokens)}, [{names}])"


class LexicalTemplate:
    """Syntax plus a semantic skeleton over typed placeholders #0..#(k-1)."""

    __slots__ = ("syntax", "skeleton", "arity", "_canonical")

    def __init__(self, syntax: SyntacticCategory, skeleton: LogicalExpression, arity: int):
        seen: list[str] = []
        types: dict[str, SemanticType] = {}
        for node in _preorder(skeleton):
            if is_placeholder(node):
                if node.name not in seen:
                    seen.append(node.name)
                    types[node.name] = node.type
                elif types[node.name] != node.type:
                    raise LexiconError(f"placeholder {node.name} used at two types")
        expected = [f"#{i}" for i in range(arity)]
        if seen != expected:
            raise LexiconError(
                f"placeholders must be #0..#{arity - 1} in first-occurrence order, "
                f"found {seen}")
        self.syntax = syntax
        self.skeleton = skeleton
        self.arity = arity
        self._canonical = Category(syntax, skeleton).canonical

    @property
    def canonical(self) -> str:
        return self._canonical

    def placeholder_types(self) -> list[SemanticType]:
        types: dict[str, SemanticType] = {}
        for node in _preorder(self.skeleton):
            if is_placeholder(node) and node.name not in types:
                types[node.name] = node.type
        return [types[f"#{i}"] for i in range(self.arity)]

    def __eq__(self, other):
        return isinstance(other, LexicalTemplate) and self._canonical == other._canonical

    def __hash__(self):
        return hash(self._canonical)

    def __repr__(self):
        return f"LexicalTemplate({self._canonical})"

    def __str__(self):
        return self._canonical


def _preorder(expr: LogicalExpression):
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Lambda):
            stack.append(node.body)
        elif isinstance(node, Literal):
            stack.extend(reversed(node.arguments))
            stack.append(node.predicate)


def _replace_constants(expr: LogicalExpression, mapping: dict) -> LogicalExpression:
    """Rebuild ``expr`` with every matching non-connective constant swapped
    per ``mapping`` (keyed by (name, type))."""
    if isinstance(expr, Constant):
        return mapping.get((expr.name, expr.type), expr)
    if isinstance(expr, Lambda):
        return Lambda(expr.parameter, _replace_constants(expr.body, mapping))
    if isinstance(expr, Literal):
        return Literal(_replace_constants(expr.predicate, mapping),
                       [_replace_constants(a, mapping) for a in expr.arguments])
    return expr


def factor_entry(entry: LexicalEntry) -> tuple[Lexeme, LexicalTemplate]:
    """Split an entry into (lexeme, template).  Distinct content constants
    become placeholders numbered by first occurrence; the same constant maps
    to the same placeholder everywhere."""
    semantics = entry.category.semantics
    distinct: list[Constant] = []
    mapping: dict = {}
    for constant in constants_of(semantics):
        key = (constant.name, constant.type)
        if key not in mapping:
            mapping[key] = placeholder(len(distinct), constant.type)
            distinct.append(constant)
    skeleton = _replace_constants(semantics, mapping)
    lexeme = Lexeme(entry.tokens, distinct)
    template = LexicalTemplate(entry.category.syntax, skeleton, len(distinct))
    return lexeme, template


def instantiate(template: LexicalTemplate, lexeme: Lexeme,
                origin: str = ORIGIN_GENLEX) -> LexicalEntry | None:
    """Fill a template's placeholders with a lexeme's constants, or None on
    arity or type mismatch."""
    if lexeme.arity != template.arity:
        return None
    slot_types = template.placeholder_types()
    for constant, slot_type in zip(lexeme.constants, slot_types):
        if constant.type != slot_type:
            return None
    mapping = {(f"#{i}", c.type): c for i, c in enumerate(lexeme.constants)}
    semantics = _replace_constants(template.skeleton, mapping)
    return LexicalEntry(lexeme.tokens, Category(template.syntax, semantics), origin)


class Lexicon:
    """Entries indexed by token sequence, plus a factored section of lexemes
    and templates expanded on lookup.  Reads are safe to share; writers (the
    learning loop) must be serialized externally."""

    def __init__(self, entries=None, lexemes=None, templates=None):
        self._entries: dict[tuple[str, ...], dict[str, LexicalEntry]] = {}
        self._lexemes: dict[tuple, Lexeme] = {}
        self._templates: dict[str, LexicalTemplate] = {}
        for entry in entries or ():
            self.add(entry)
        for lexeme in lexemes or ():
            self.add_lexeme(lexeme)
        for template in templates or ():
            self.add_template(template)

    def add(self, entry: LexicalEntry) -> bool:
        """Store an entry; returns False if an identical one was present."""
        bucket = self._entries.setdefault(entry.tokens, {})
        if entry.category.canonical in bucket:
            return False
        bucket[entry.category.canonical] = entry
        return True

    def add_lexeme(self, lexeme: Lexeme) -> bool:
        if lexeme._key in self._lexemes:
            return False
        self._lexemes[lexeme._key] = lexeme
        return True

    def add_template(self, template: LexicalTemplate) -> bool:
        if template.canonical in self._templates:
            return False
        self._templates[template.canonical] = template
        return True

    @property
    def lexemes(self) -> tuple[Lexeme, ...]:
        return tuple(self._lexemes.values())

    @property
    def templates(self) -> tuple[LexicalTemplate, ...]:
        return tuple(self._templates.values())

    def __contains__(self, entry: LexicalEntry) -> bool:
        bucket = self._entries.get(entry.tokens)
        return bool(bucket) and entry.category.canonical in bucket

    def __len__(self):
        return sum(len(bucket) for bucket in self._entries.values())

    def __iter__(self):
        for bucket in self._entries.values():
            yield from bucket.values()

    def lookup(self, tokens) -> list[LexicalEntry]:
        """Entries for this exact token sequence: direct ones plus every
        type-valid (lexeme, template) instantiation, without duplicates."""
        tokens = tuple(tokens)
        out: list[LexicalEntry] = []
        seen: set = set()
        for entry in self._entries.get(tokens, {}).values():
            out.append(entry)
            seen.add(entry.key)
        for lexeme in self._lexemes.values():
            if lexeme.tokens != tokens:
                continue
            for template in self._templates.values():
                entry = instantiate(template, lexeme)
                if entry is not None and entry.key not in seen:
                    seen.add(entry.key)
                    out.append(entry)
        return out

    def max_tokens(self) -> int:
        """Longest token sequence stored, counting lexemes; 0 when empty."""
        lengths = [len(tokens) for tokens in self._entries]
        lengths += [len(lexeme.tokens) for lexeme in self._lexemes.values()]
        return max(lengths, default=0)

    def copy(self) -> "Lexicon":
        clone = Lexicon()
        for entry in self:
            clone.add(entry)
        for lexeme in self._lexemes.values():
            clone.add_lexeme(lexeme)
        for template in self._templates.values():
            clone.add_template(template)
        return clone

    def sorted_entries(self) -> list[LexicalEntry]:
        return sorted(self, key=lambda e: (e.tokens, e.category.canonical))

    # --- file format: one `token token :- SYNTAX : EXPRESSION` per line ----

    @classmethod
    def loads(cls, text: str, ontology: Ontology, atoms=None,
              origin: str = ORIGIN_SEED) -> "Lexicon":
        lexicon = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens_text, sep, category_text = line.partition(":-")
            if not sep:
                raise LexiconError(f"line {lineno}: expected 'tokens :- category'")
            tokens = tokens_text.split()
            if not tokens:
                raise LexiconError(f"line {lineno}: entry has no tokens")
            try:
                category = parse_category_text(category_text.strip(), ontology, atoms)
            except ValueError as err:
                raise LexiconError(f"line {lineno}: {err}") from err
            lexicon.add(LexicalEntry(tokens, category, origin))
        return lexicon

    @classmethod
    def load(cls, path, ontology: Ontology, atoms=None,
             origin: str = ORIGIN_SEED) -> "Lexicon":
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        try:
            return cls.loads(text, ontology, atoms, origin)
        except LexiconError as err:
            raise LexiconError(f"{path}: {err}") from err

    def dumps(self) -> str:
        return "".join(f"{entry}\n" for entry in self.sorted_entries())

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.dumps())
