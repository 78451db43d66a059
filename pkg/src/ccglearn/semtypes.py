"""Semantic types and the ontology of typed constants.

Types are either primitives (``e``, ``t``, ``i`` by default, more may be
declared) or function types written in angle brackets, ``<domain,range>``.
A ``*`` suffix on the domain marks a variadic function such as the logical
conjunction ``and:<t*,t>``, which takes two or more arguments of the domain
type.  Variadic types never appear in range position.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_PRIMITIVES = frozenset({"e", "t", "i"})


class LogicError(ValueError):
    """Base class for errors in the representation language."""


class TypeParseError(LogicError):
    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in type {text!r}")
        self.text = text
        self.offset = offset


class UndeclaredTypeError(LogicError):
    pass


class OntologyError(LogicError):
    pass


@dataclass(frozen=True)
class SemanticType:
    def is_function(self) -> bool:
        return False


@dataclass(frozen=True)
class PrimitiveType(SemanticType):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FunctionType(SemanticType):
    domain: SemanticType
    range: SemanticType
    variadic: bool = False

    def is_function(self) -> bool:
        return True

    def __str__(self):
        star = "*" if self.variadic else ""
        return f"<{self.domain}{star},{self.range}>"


E = PrimitiveType("e")
T = PrimitiveType("t")
I = PrimitiveType("i")


def parse_type(text: str, primitives: frozenset[str] | None = None) -> SemanticType:
    """Read a type from angle-bracket notation, e.g. ``<<e,t>,<e,t>>``.

    ``primitives`` is the set of legal primitive names (default ``e,t,i``);
    an unknown name raises UndeclaredTypeError, other malformed input raises
    TypeParseError with the failing character offset.
    """
    if primitives is None:
        primitives = DEFAULT_PRIMITIVES
    if not text:
        raise TypeParseError("empty type", text, 0)

    def read(pos: int) -> tuple[SemanticType, int]:
        if pos >= len(text):
            raise TypeParseError("unexpected end of type", text, pos)
        if text[pos] == "<":
            domain, pos = read(pos + 1)
            variadic = False
            if pos < len(text) and text[pos] == "*":
                variadic = True
                pos += 1
            if pos >= len(text) or text[pos] != ",":
                raise TypeParseError("expected ','", text, pos)
            rng, pos = read(pos + 1)
            if pos < len(text) and text[pos] == "*":
                raise TypeParseError("variadic marker not allowed on range", text, pos)
            if pos >= len(text) or text[pos] != ">":
                raise TypeParseError("expected '>'", text, pos)
            return FunctionType(domain, rng, variadic), pos + 1
        start = pos
        while pos < len(text) and text[pos] not in "<>,*":
            pos += 1
        name = text[start:pos]
        if not name:
            raise TypeParseError(f"expected type name, found {text[pos]!r}", text, pos)
        if name not in primitives:
            raise UndeclaredTypeError(f"undeclared primitive type {name!r} in {text!r}")
        return PrimitiveType(name), pos

    parsed, end = read(0)
    if end != len(text):
        raise TypeParseError("trailing characters after type", text, end)
    return parsed


TRUTH_FN = FunctionType(T, T, variadic=True)
NOT_FN = FunctionType(T, T)

# Reserved logical connectives present in every ontology.
CONNECTIVES: dict[str, SemanticType] = {"and": TRUTH_FN, "or": TRUTH_FN, "not": NOT_FN}


def _primitives_of(semtype: SemanticType) -> set[str]:
    if isinstance(semtype, PrimitiveType):
        return {semtype.name}
    assert isinstance(semtype, FunctionType)
    return _primitives_of(semtype.domain) | _primitives_of(semtype.range)


class Ontology:
    """Declared primitive types plus a unique-name table of typed constants.

    The connectives ``and``, ``or`` and ``not`` are always present and cannot
    be redeclared with a different type.  With ``permissive=True`` the
    expression reader is allowed to add constants it has not seen before.
    """

    def __init__(self, constants: dict[str, SemanticType] | None = None,
                 primitive_types: set[str] | None = None, permissive: bool = False):
        self.primitive_types: set[str] = set(DEFAULT_PRIMITIVES)
        if primitive_types:
            self.primitive_types.update(primitive_types)
        self.permissive = permissive
        self.constants: dict[str, SemanticType] = dict(CONNECTIVES)
        if constants:
            for name, semtype in constants.items():
                self.declare(name, semtype)

    def declare(self, name: str, semtype: SemanticType) -> None:
        if not name:
            raise OntologyError("constant name must be non-empty")
        existing = self.constants.get(name)
        if existing is not None:
            if existing != semtype:
                raise OntologyError(
                    f"constant {name!r} already declared with type {existing}, got {semtype}")
            return
        bad = _primitives_of(semtype) - self.primitive_types
        if bad:
            raise OntologyError(
                f"constant {name!r} uses undeclared primitive types {sorted(bad)}")
        self.constants[name] = semtype

    def declare_primitive(self, name: str) -> None:
        if not name or any(c in name for c in "<>,*: \t"):
            raise OntologyError(f"bad primitive type name {name!r}")
        self.primitive_types.add(name)

    def type_of(self, name: str) -> SemanticType | None:
        return self.constants.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.constants

    @staticmethod
    def is_connective(name: str) -> bool:
        return name in CONNECTIVES

    @classmethod
    def loads(cls, text: str, permissive: bool = False) -> "Ontology":
        """Parse ontology file text: one ``name:type`` declaration per line,
        ``:primitive name`` for extra primitive types, ``#`` comments."""
        ontology = cls(permissive=permissive)
        pending: list[tuple[int, str]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith(":primitive"):
                rest = line[len(":primitive"):].strip()
                if not rest:
                    raise OntologyError(f"line {lineno}: ':primitive' needs a name")
                ontology.declare_primitive(rest)
                continue
            pending.append((lineno, line))
        # Constants are resolved after all primitive declarations.
        for lineno, line in pending:
            name, sep, type_text = line.partition(":")
            if not sep or not name or not type_text:
                raise OntologyError(f"line {lineno}: expected 'name:type', got {line!r}")
            try:
                semtype = parse_type(type_text, frozenset(ontology.primitive_types))
            except LogicError as err:
                raise OntologyError(f"line {lineno}: {err}") from err
            ontology.declare(name.strip(), semtype)
        return ontology

    @classmethod
    def load(cls, path, permissive: bool = False) -> "Ontology":
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        try:
            return cls.loads(text, permissive=permissive)
        except OntologyError as err:
            raise OntologyError(f"{path}: {err}") from err
