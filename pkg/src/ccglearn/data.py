"""Dataset files.

Supervised sets are blocks of two lines, sentence then logical form,
separated by blank lines.  Validation sets replace the logical-form line
with ``VALIDATOR:name(args)``; ``lf-equal(<expression>)`` is the built-in
validator and doubles as the GENLEX candidate source.
"""

from __future__ import annotations

from typing import Callable

from .chart import ParseResult
from .lambdas import alpha_equal, parse_expression
from .learning import SupervisedExample, ValidationExample
from .semtypes import Ontology


class DatasetError(ValueError):
    pass


def tokenize(sentence: str) -> tuple[str, ...]:
    """Lowercase + whitespace split; punctuation must be pre-separated."""
    return tuple(sentence.lower().split())


def _blocks(text: str):
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            block.append((lineno, line))
        elif block:
            yield block
            block = []
    if block:
        yield block


def _read_blocks(text: str, what: str):
    for block in _blocks(text):
        if len(block) != 2:
            lineno = block[0][0]
            raise DatasetError(
                f"line {lineno}: {what} example must be two lines "
                f"(sentence, then {what} line), got {len(block)}")
        yield block


def load_supervised(path, ontology: Ontology) -> list[SupervisedExample]:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    examples = []
    for (sent_no, sentence), (lf_no, lf_text) in _read_blocks(text, "supervised"):
        tokens = tokenize(sentence)
        if not tokens:
            raise DatasetError(f"{path}: line {sent_no}: empty sentence")
        try:
            labeled_lf = parse_expression(lf_text, ontology)
        except ValueError as err:
            raise DatasetError(f"{path}: line {lf_no}: {err}") from err
        examples.append(SupervisedExample(tokens, labeled_lf))
    if not examples:
        raise DatasetError(f"{path}: dataset is empty")
    return examples


# --- validators --------------------------------------------------------------

ValidatorFactory = Callable[[str, Ontology], ValidationExample]
# A factory takes the argument text and the ontology and returns
# (validator callable, candidate logical form or None).

_VALIDATORS: dict[str, Callable] = {}


def register_validator(name: str, factory) -> None:
    _VALIDATORS[name] = factory


def _lf_equal_factory(args: str, ontology: Ontology):
    label = parse_expression(args, ontology)

    def validate(result: ParseResult) -> bool:
        return alpha_equal(result.logical_form, label)

    return validate, label


register_validator("lf-equal", _lf_equal_factory)


def _parse_validator_line(line: str, lineno: int, ontology: Ontology):
    prefix = "VALIDATOR:"
    if not line.startswith(prefix):
        raise DatasetError(f"line {lineno}: expected '{prefix}name(args)', got {line!r}")
    spec_text = line[len(prefix):].strip()
    open_paren = spec_text.find("(")
    if open_paren < 0 or not spec_text.endswith(")"):
        raise DatasetError(f"line {lineno}: expected 'name(args)', got {spec_text!r}")
    name = spec_text[:open_paren].strip()
    args = spec_text[open_paren + 1:-1]
    factory = _VALIDATORS.get(name)
    if factory is None:
        raise DatasetError(f"line {lineno}: unknown validator {name!r} "
                           f"(known: {sorted(_VALIDATORS)})")
    try:
        return factory(args, ontology)
    except ValueError as err:
        raise DatasetError(f"line {lineno}: {err}") from err


def load_validation(path, ontology: Ontology) -> list[ValidationExample]:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    examples = []
    for (sent_no, sentence), (val_no, val_line) in _read_blocks(text, "validation"):
        tokens = tokenize(sentence)
        if not tokens:
            raise DatasetError(f"{path}: line {sent_no}: empty sentence")
        try:
            validator, candidate_lf = _parse_validator_line(val_line, val_no, ontology)
        except DatasetError as err:
            raise DatasetError(f"{path}: {err}") from err
        examples.append(ValidationExample(tokens, validator, candidate_lf))
    if not examples:
        raise DatasetError(f"{path}: dataset is empty")
    return examples
