"""Sparse linear scoring of derivation steps.

Feature vectors are plain dicts from string keys to floats, with no explicit
zeros.  All indicator features have value 1.  Four families exist:

  LEX#tokens#category   lexical entry identity
  LXM#tokens#constants  the entry's lexeme (content constants)
  TMPL#template         the entry's factored template
  RULE#name             combinator applications

A derivation's score decomposes over its steps, which is what makes chart
Viterbi scores correct.
"""

from __future__ import annotations

from .lexicon import LexicalEntry, Lexicon, factor_entry

FeatureVector = dict[str, float]

ALL_FAMILIES = ("lex", "lexeme", "template", "rule")


class ModelFormatError(ValueError):
    pass


# --- sparse vector helpers --------------------------------------------------

def dot(u: FeatureVector, v: FeatureVector) -> float:
    if len(v) < len(u):
        u, v = v, u
    return sum(value * v[key] for key, value in u.items() if key in v)


def vadd(into: FeatureVector, other: FeatureVector, scale: float = 1.0) -> None:
    """In-place ``into += scale * other``, dropping keys that reach zero."""
    for key, value in other.items():
        updated = into.get(key, 0.0) + scale * value
        if updated == 0.0:
            into.pop(key, None)
        else:
            into[key] = updated


def vsum(vectors) -> FeatureVector:
    out: FeatureVector = {}
    for vector in vectors:
        vadd(out, vector)
    return out


def vsub(u: FeatureVector, v: FeatureVector) -> FeatureVector:
    out = dict(u)
    vadd(out, v, -1.0)
    return out


def vmean(vectors: list[FeatureVector]) -> FeatureVector:
    out = vsum(vectors)
    n = len(vectors)
    if n > 1:
        out = {key: value / n for key, value in out.items()}
    return out


def l1norm(v: FeatureVector) -> float:
    return sum(abs(value) for value in v.values())


# --- step features -----------------------------------------------------------

def lexical_features(entry: LexicalEntry, families=ALL_FAMILIES) -> FeatureVector:
    out: FeatureVector = {}
    tokens = " ".join(entry.tokens)
    if "lex" in families:
        out[f"LEX#{tokens}#{entry.category.canonical}"] = 1.0
    if "lexeme" in families or "template" in families:
        lexeme, template = factor_entry(entry)
        if "lexeme" in families:
            names = ",".join(c.name for c in lexeme.constants)
            out[f"LXM#{tokens}#{names}"] = 1.0
        if "template" in families:
            out[f"TMPL#{template.canonical}"] = 1.0
    return out


def rule_features(rule_name: str, families=ALL_FAMILIES) -> FeatureVector:
    if "rule" in families:
        return {f"RULE#{rule_name}": 1.0}
    return {}


class Model:
    """Sparse weights plus the active feature families."""

    def __init__(self, weights: FeatureVector | None = None, families=ALL_FAMILIES):
        for family in families:
            if family not in ALL_FAMILIES:
                raise ValueError(f"unknown feature family {family!r}")
        self.weights: FeatureVector = dict(weights or {})
        self.families = tuple(families)

    def score(self, features: FeatureVector) -> float:
        return dot(self.weights, features)

    def features_for_entry(self, entry: LexicalEntry) -> FeatureVector:
        return lexical_features(entry, self.families)

    def features_for_rule(self, rule_name: str) -> FeatureVector:
        return rule_features(rule_name, self.families)

    def update(self, direction: FeatureVector, scale: float) -> None:
        """weights += scale * direction, removing keys that reach zero."""
        vadd(self.weights, direction, scale)

    def apply_seed_prior(self, lexicon: Lexicon, weight: float = 1.0) -> None:
        """Give every seed entry's LEX indicator an initial weight so seeded
        grammar outranks induction noise early in training."""
        if weight == 0.0:
            return
        for entry in lexicon.sorted_entries():
            key = f"LEX#{' '.join(entry.tokens)}#{entry.category.canonical}"
            self.weights[key] = weight

    def snapshot(self) -> "Model":
        return Model(dict(self.weights), self.families)

    # --- text format: `key<TAB>weight` per line, keys sorted -----------------

    def dumps(self) -> str:
        return "".join(f"{key}\t{weight:.17g}\n"
                       for key, weight in sorted(self.weights.items()))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.dumps())

    @classmethod
    def loads(cls, text: str, families=ALL_FAMILIES) -> "Model":
        weights: FeatureVector = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw:
                continue
            key, sep, value_text = raw.partition("\t")
            if not sep or not key:
                raise ModelFormatError(f"line {lineno}: expected 'key<TAB>weight'")
            try:
                value = float(value_text)
            except ValueError as err:
                raise ModelFormatError(f"line {lineno}: bad weight {value_text!r}") from err
            if value != 0.0:
                weights[key] = value
        return cls(weights, families)

    @classmethod
    def load(cls, path, families=ALL_FAMILIES) -> "Model":
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        try:
            return cls.loads(text, families)
        except ModelFormatError as err:
            raise ModelFormatError(f"{path}: {err}") from err
