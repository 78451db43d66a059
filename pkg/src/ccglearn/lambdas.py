"""Typed lambda-calculus terms: reader, canonical printer, normalization and
the structural utilities the grammar and induction layers are built on.

Terms are immutable and always well-typed; every node carries its type, so
type inference is a field lookup.  The text format is parenthesized prefix
notation: constants ``name:type``, variables ``$k:type`` at the binding site
and ``$k`` afterwards, ``(lambda $k:type body)`` for abstractions and
``(f a b ...)`` for applications.
"""

from __future__ import annotations

from .semtypes import (
    FunctionType,
    LogicError,
    Ontology,
    SemanticType,
    parse_type,
)


class ExprParseError(LogicError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class TypingError(LogicError):
    pass


class LogicalExpression:
    """Base class; concrete nodes are Constant, Variable, Lambda, Literal."""

    __slots__ = ("type", "_hash")

    type: SemanticType
    _hash: int

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({print_expression(self)})"

    def __str__(self):
        return print_expression(self)


class Constant(LogicalExpression):
    __slots__ = ("name",)

    def __init__(self, name: str, semtype: SemanticType):
        self.name = name
        self.type = semtype
        self._hash = hash(("c", name, semtype))

    def __eq__(self, other):
        return (isinstance(other, Constant) and self.name == other.name
                and self.type == other.type)


class Variable(LogicalExpression):
    __slots__ = ("id",)

    def __init__(self, var_id: int, semtype: SemanticType):
        self.id = var_id
        self.type = semtype
        self._hash = hash(("v", var_id, semtype))

    def __eq__(self, other):
        return (isinstance(other, Variable) and self.id == other.id
                and self.type == other.type)


class Lambda(LogicalExpression):
    __slots__ = ("parameter", "body")

    def __init__(self, parameter: Variable, body: LogicalExpression):
        if not isinstance(parameter, Variable):
            raise TypingError("lambda parameter must be a variable")
        self.parameter = parameter
        self.body = body
        self.type = FunctionType(parameter.type, body.type)
        self._hash = hash(("l", parameter._hash, body._hash))

    def __eq__(self, other):
        return (isinstance(other, Lambda) and self._hash == other._hash
                and self.parameter == other.parameter and self.body == other.body)


def _apply_type(fn_type: SemanticType, arg_types: list[SemanticType]) -> SemanticType:
    """Type of applying a function type to argument types, or TypingError."""
    if isinstance(fn_type, FunctionType) and fn_type.variadic:
        if len(arg_types) < 2:
            raise TypingError(
                f"variadic predicate {fn_type} needs at least 2 arguments, got {len(arg_types)}")
        for i, arg_type in enumerate(arg_types):
            if arg_type != fn_type.domain:
                raise TypingError(
                    f"variadic argument {i} has type {arg_type}, expected {fn_type.domain}")
        return fn_type.range
    remaining = fn_type
    for i, arg_type in enumerate(arg_types):
        if not isinstance(remaining, FunctionType) or remaining.variadic:
            raise TypingError(f"type {fn_type} cannot take {len(arg_types)} arguments")
        if arg_type != remaining.domain:
            raise TypingError(
                f"argument {i} has type {arg_type}, expected {remaining.domain}")
        remaining = remaining.range
    return remaining


class Literal(LogicalExpression):
    __slots__ = ("predicate", "arguments")

    def __init__(self, predicate: LogicalExpression, arguments):
        arguments = tuple(arguments)
        if not arguments:
            raise TypingError("literal needs at least one argument")
        self.predicate = predicate
        self.arguments = arguments
        self.type = _apply_type(predicate.type, [a.type for a in arguments])
        self._hash = hash(("a", predicate._hash) + tuple(a._hash for a in arguments))

    def __eq__(self, other):
        return (isinstance(other, Literal) and self._hash == other._hash
                and self.predicate == other.predicate
                and self.arguments == other.arguments)


# Connectives whose nested literals may be flattened: associative by meaning.
_FLATTENABLE = ("and", "or")


def infer_type(expr: LogicalExpression) -> SemanticType:
    """The type of a term; stored at construction, so this is a field read."""
    return expr.type


def free_variables(expr: LogicalExpression) -> dict[int, Variable]:
    """Free variables keyed by id, in first-occurrence order."""
    out: dict[int, Variable] = {}

    def walk(node, bound: frozenset[int]):
        if isinstance(node, Variable):
            if node.id not in bound and node.id not in out:
                out[node.id] = node
        elif isinstance(node, Lambda):
            walk(node.body, bound | {node.parameter.id})
        elif isinstance(node, Literal):
            walk(node.predicate, bound)
            for arg in node.arguments:
                walk(arg, bound)

    walk(expr, frozenset())
    return out


def is_closed(expr: LogicalExpression) -> bool:
    return not free_variables(expr)


def max_variable_id(expr: LogicalExpression) -> int:
    """Largest variable id mentioned anywhere, -1 for variable-free terms."""
    best = -1
    for node in subexpressions(expr):
        if isinstance(node, Variable):
            best = max(best, node.id)
        elif isinstance(node, Lambda):
            best = max(best, node.parameter.id)
    return best


def subexpressions(expr: LogicalExpression) -> list[LogicalExpression]:
    """All nodes of the term tree in pre-order, including ``expr`` itself.

    A lambda contributes itself plus its body's nodes (the bound parameter is
    part of the binder, not a separate node); a literal contributes itself,
    its predicate's nodes and each argument's nodes.
    """
    out: list[LogicalExpression] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        out.append(node)
        if isinstance(node, Lambda):
            stack.append(node.body)
        elif isinstance(node, Literal):
            stack.extend(reversed(node.arguments))
            stack.append(node.predicate)
    return out


def constants_of(expr: LogicalExpression) -> list[Constant]:
    """Non-logical constants in left-to-right order, duplicates preserved."""
    return [node for node in subexpressions(expr)
            if isinstance(node, Constant) and not Ontology.is_connective(node.name)]


# --- reader ---------------------------------------------------------------

_ATOM_END = " \t\r\n()"


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        char = text[pos]
        if char in " \t\r\n":
            pos += 1
        elif char in "()":
            tokens.append((char, pos))
            pos += 1
        else:
            start = pos
            while pos < len(text) and text[pos] not in _ATOM_END:
                pos += 1
            tokens.append((text[start:pos], start))
    return tokens


def _read_variable_binding(atom: str, offset: int, primitives) -> Variable:
    name, sep, type_text = atom.partition(":")
    if not sep:
        raise ExprParseError(f"binding {atom!r} needs a ':type' annotation", offset)
    if not name.startswith("$") or not name[1:].isdigit():
        raise ExprParseError(f"bad variable name {name!r}", offset)
    try:
        semtype = parse_type(type_text, primitives)
    except LogicError as err:
        raise ExprParseError(str(err), offset) from err
    return Variable(int(name[1:]), semtype)


def parse_expression(text: str, ontology: Ontology) -> LogicalExpression:
    """Read a closed, well-typed term.  Constants must match the ontology;
    unknown constants are declared on the fly only for permissive ontologies.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExprParseError("empty expression", 0)
    primitives = frozenset(ontology.primitive_types)

    def read_atom(atom: str, offset: int, scope: dict[int, Variable]) -> LogicalExpression:
        if atom.startswith("$"):
            if ":" in atom:
                raise ExprParseError(
                    f"variable {atom!r} may carry a type only at its binding site", offset)
            if not atom[1:].isdigit():
                raise ExprParseError(f"bad variable name {atom!r}", offset)
            var_id = int(atom[1:])
            if var_id not in scope:
                raise ExprParseError(f"unbound variable {atom!r}", offset)
            return scope[var_id]
        name, sep, type_text = atom.partition(":")
        if not sep or not name or not type_text:
            raise ExprParseError(f"constant {atom!r} must be written name:type", offset)
        try:
            semtype = parse_type(type_text, primitives)
        except LogicError as err:
            raise ExprParseError(str(err), offset) from err
        declared = ontology.type_of(name)
        if declared is None:
            if not ontology.permissive:
                raise ExprParseError(f"undeclared constant {name!r}", offset)
            ontology.declare(name, semtype)
        elif declared != semtype:
            raise ExprParseError(
                f"constant {name!r} declared {declared}, written {semtype}", offset)
        return Constant(name, semtype)

    def read(index: int, scope: dict[int, Variable]) -> tuple[LogicalExpression, int]:
        token, offset = tokens[index]
        if token == ")":
            raise ExprParseError("unexpected ')'", offset)
        if token != "(":
            return read_atom(token, offset, scope), index + 1
        index += 1
        if index >= len(tokens):
            raise ExprParseError("unexpected end of expression", offset)
        head, head_offset = tokens[index]
        if head == "lambda":
            index += 1
            if index >= len(tokens):
                raise ExprParseError("lambda needs a parameter", head_offset)
            param_token, param_offset = tokens[index]
            parameter = _read_variable_binding(param_token, param_offset, primitives)
            inner = dict(scope)
            inner[parameter.id] = parameter
            body, index = read(index + 1, inner)
            if index >= len(tokens) or tokens[index][0] != ")":
                raise ExprParseError("lambda body must be a single expression",
                                     tokens[index][1] if index < len(tokens) else len(text))
            return Lambda(parameter, body), index + 1
        predicate, index = read(index, scope)
        arguments = []
        while index < len(tokens) and tokens[index][0] != ")":
            arg, index = read(index, scope)
            arguments.append(arg)
        if index >= len(tokens):
            raise ExprParseError("missing ')'", len(text))
        if not arguments:
            raise ExprParseError("application needs at least one argument", offset)
        try:
            return Literal(predicate, arguments), index + 1
        except TypingError as err:
            raise ExprParseError(str(err), offset) from err

    expr, index = read(0, {})
    if index != len(tokens):
        raise ExprParseError("trailing tokens after expression", tokens[index][1])
    return expr


# --- canonical printer ----------------------------------------------------

def print_expression(expr: LogicalExpression) -> str:
    """Canonical text: binders renumbered $0,$1,... in pre-order of binder
    occurrence.  Free variables (possible only in intermediate open terms)
    keep their ids, and binder numbering skips them.
    """
    reserved = set(free_variables(expr))
    counter = iter(i for i in range(10 ** 9) if i not in reserved)
    parts: list[str] = []

    def walk(node, env: dict[int, int], binding: bool = False):
        if isinstance(node, Constant):
            parts.append(f"{node.name}:{node.type}")
        elif isinstance(node, Variable):
            shown = env.get(node.id, node.id)
            parts.append(f"${shown}:{node.type}" if binding else f"${shown}")
        elif isinstance(node, Lambda):
            fresh = next(counter)
            inner = dict(env)
            inner[node.parameter.id] = fresh
            parts.append("(lambda ")
            parts.append(f"${fresh}:{node.parameter.type}")
            parts.append(" ")
            walk(node.body, inner)
            parts.append(")")
        else:
            parts.append("(")
            walk(node.predicate, env)
            for arg in node.arguments:
                parts.append(" ")
                walk(arg, env)
            parts.append(")")

    walk(expr, {})
    return "".join(parts)


# --- alpha equivalence ----------------------------------------------------

def alpha_equal(a: LogicalExpression, b: LogicalExpression) -> bool:
    """Structural equality up to renaming of bound variables."""

    def walk(x, y, env_a: dict[int, int], env_b: dict[int, int]) -> bool:
        if isinstance(x, Constant):
            return isinstance(y, Constant) and x.name == y.name and x.type == y.type
        if isinstance(x, Variable):
            if not isinstance(y, Variable) or x.type != y.type:
                return False
            ax, by = env_a.get(x.id), env_b.get(y.id)
            if ax is None and by is None:  # both free
                return x.id == y.id
            return ax is not None and ax == by
        if isinstance(x, Lambda):
            if not isinstance(y, Lambda) or x.parameter.type != y.parameter.type:
                return False
            depth = len(env_a)
            inner_a = dict(env_a)
            inner_a[x.parameter.id] = depth
            inner_b = dict(env_b)
            inner_b[y.parameter.id] = depth
            return walk(x.body, y.body, inner_a, inner_b)
        if isinstance(x, Literal):
            return (isinstance(y, Literal)
                    and len(x.arguments) == len(y.arguments)
                    and walk(x.predicate, y.predicate, env_a, env_b)
                    and all(walk(p, q, env_a, env_b)
                            for p, q in zip(x.arguments, y.arguments)))
        return False

    return walk(a, b, {}, {})


# --- substitution and normalization ----------------------------------------

class _FreshIds:
    """Fresh variable ids above everything seen so far."""

    def __init__(self, *exprs: LogicalExpression):
        self._next = max((max_variable_id(e) for e in exprs), default=-1) + 1

    def take(self) -> int:
        self._next += 1
        return self._next - 1


def _substitute(expr, var_id: int, value, fresh: _FreshIds):
    """Capture-avoiding substitution of ``value`` for the free ``var_id``.

    Binders whose parameter appears free in ``value`` are renamed first, with
    ids drawn from ``fresh``, so output is deterministic.
    """
    value_free = set(free_variables(value))

    def walk(node):
        if isinstance(node, Constant):
            return node
        if isinstance(node, Variable):
            return value if node.id == var_id else node
        if isinstance(node, Lambda):
            param = node.parameter
            if param.id == var_id:  # shadowed below this binder
                return node
            body = node.body
            if param.id in value_free:
                renamed = Variable(fresh.take(), param.type)
                body = _substitute(body, param.id, renamed, fresh)
                param = renamed
            return Lambda(param, walk(body))
        return Literal(walk(node.predicate), [walk(a) for a in node.arguments])

    return walk(expr)


def simplify(expr: LogicalExpression) -> LogicalExpression:
    """Beta-normal form with curried applications merged and nested ``and``/
    ``or`` literals flattened.  No eta reduction."""
    fresh = _FreshIds(expr)

    def norm(node):
        if isinstance(node, (Constant, Variable)):
            return node
        if isinstance(node, Lambda):
            return Lambda(node.parameter, norm(node.body))
        predicate = norm(node.predicate)
        arguments = [norm(a) for a in node.arguments]
        while isinstance(predicate, Lambda) and arguments:
            reduced = _substitute(predicate.body, predicate.parameter.id,
                                  arguments.pop(0), fresh)
            predicate = norm(reduced)
        if not arguments:
            return predicate
        if isinstance(predicate, Literal):
            # merge curried application: ((f a) b) == (f a b)
            return norm(Literal(predicate.predicate,
                                list(predicate.arguments) + arguments))
        if (isinstance(predicate, Constant) and predicate.name in _FLATTENABLE
                and isinstance(predicate.type, FunctionType) and predicate.type.variadic):
            flat = []
            for arg in arguments:
                if (isinstance(arg, Literal) and isinstance(arg.predicate, Constant)
                        and arg.predicate == predicate):
                    flat.extend(arg.arguments)
                else:
                    flat.append(arg)
            arguments = flat
        return Literal(predicate, arguments)

    return norm(expr)


# --- composition and application -------------------------------------------

def apply_exp(function: LogicalExpression,
              argument: LogicalExpression) -> LogicalExpression | None:
    """Typed application: the normalized result of ``function(argument)``, or
    None when the types do not fit.  Variadic functions cannot be applied to
    a single argument this way."""
    fn_type = function.type
    if not isinstance(fn_type, FunctionType) or fn_type.variadic:
        return None
    if fn_type.domain != argument.type:
        return None
    return simplify(Literal(function, [argument]))


def compose_exp(function: LogicalExpression,
                inner: LogicalExpression) -> LogicalExpression | None:
    """Function composition: for f:<B,C> and g:<A,B>, the normal form of
    ``lambda x:A. f (g x)``; None when the types do not chain."""
    f_type, g_type = function.type, inner.type
    if not isinstance(f_type, FunctionType) or f_type.variadic:
        return None
    if not isinstance(g_type, FunctionType) or g_type.variadic:
        return None
    if f_type.domain != g_type.range:
        return None
    fresh = _FreshIds(function, inner)
    x = Variable(fresh.take(), g_type.domain)
    body = Literal(function, [Literal(inner, [x])])
    return simplify(Lambda(x, body))
