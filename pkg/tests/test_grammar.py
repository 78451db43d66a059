import pytest

from ccglearn import (
    Atomic,
    Slash,
    alpha_equal,
    apply_exp,
    backward_application,
    backward_composition,
    forward_application,
    forward_composition,
    parse_category_text,
    parse_expression,
    parse_syntax,
    parse_type,
)
from ccglearn.grammar import BACKWARD, FORWARD, Category, CategoryError, syntax_arity
from ccglearn.lambdas import Constant

from termgen import TermGenerator, pool_ontology
import random


# --- syntax -------------------------------------------------------------------

def test_parse_atomic():
    assert parse_syntax("NP") == Atomic("NP")


def test_parse_slash_left_associative():
    parsed = parse_syntax("(S\\NP)/NP")
    assert parsed == Slash(Slash(Atomic("S"), BACKWARD, Atomic("NP")),
                           FORWARD, Atomic("NP"))
    assert parse_syntax("S\\NP/NP") == parsed


def test_parse_nested_argument():
    parsed = parse_syntax("S/(S\\NP)")
    assert parsed.argument == Slash(Atomic("S"), BACKWARD, Atomic("NP"))


def test_syntax_print_parse_round_trip():
    for text in ("S", "NP", "S\\NP", "(S\\NP)/NP", "N/N", "(N\\N)/NP",
                 "S/(S\\NP)", "((S\\NP)/NP)/NP"):
        assert parse_syntax(str(parse_syntax(text))) == parse_syntax(text)


def test_unknown_atom_rejected():
    with pytest.raises(CategoryError):
        parse_syntax("XP")
    assert parse_syntax("XP", frozenset({"XP"})) == Atomic("XP")


def test_syntax_arity():
    assert syntax_arity(parse_syntax("NP")) == 0
    assert syntax_arity(parse_syntax("S\\NP")) == 1
    assert syntax_arity(parse_syntax("(S\\NP)/NP")) == 2


# --- categories -----------------------------------------------------------------

def test_parse_category(mini_ontology):
    category = parse_category_text("NP : texas:e", mini_ontology)
    assert category.syntax == Atomic("NP")
    assert category.canonical == "NP : texas:e"


def test_parse_transitive_category(mini_ontology):
    text = ("(S\\NP)/NP : (lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))")
    category = parse_category_text(text, mini_ontology)
    assert syntax_arity(category.syntax) == 2
    assert str(category.semantics.type) == "<e,<e,t>>"


def test_slash_category_requires_function_semantics(mini_ontology):
    with pytest.raises(CategoryError):
        parse_category_text("S/NP : texas:e", mini_ontology)


def test_category_equality_is_alpha_insensitive(mini_ontology):
    a = parse_category_text("N : (lambda $0:e (city:<e,t> $0))", mini_ontology)
    b = parse_category_text("N : (lambda $4:e (city:<e,t> $4))", mini_ontology)
    assert a == b
    assert hash(a) == hash(b)


# --- combinators -----------------------------------------------------------------

@pytest.fixture()
def cats(mini_ontology):
    def make(text):
        return parse_category_text(text, mini_ontology)
    return make


def test_forward_application(cats):
    verb = cats("(S\\NP)/NP : (lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))")
    obj = cats("NP : texas:e")
    result = forward_application(verb, obj)
    assert result.canonical == "S\\NP : (lambda $0:e (border:<e,<e,t>> $0 texas:e))"


def test_forward_application_syntax_mismatch(cats):
    assert forward_application(cats("N/N : (lambda $0:<e,t> $0)"),
                               cats("NP : texas:e")) is None


def test_forward_application_semantic_type_clash(mini_ontology):
    # syntax matches but the semantics cannot apply
    left = Category(Slash(Atomic("S"), FORWARD, Atomic("NP")),
                    parse_expression("(lambda $0:t (not:<t,t> $0))", mini_ontology))
    right = Category(Atomic("NP"), parse_expression("texas:e", mini_ontology))
    assert forward_application(left, right) is None


def test_backward_application(cats):
    subject = cats("NP : texas:e")
    phrase = cats("S\\NP : (lambda $0:e (border:<e,<e,t>> $0 oklahoma:e))")
    result = backward_application(subject, phrase)
    assert result.canonical == "S : (border:<e,<e,t>> texas:e oklahoma:e)"
    assert backward_application(subject, cats("N\\N : (lambda $0:<e,t> $0)")) is None


def test_full_sentence_by_application(cats):
    verb = cats("(S\\NP)/NP : (lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))")
    vp = forward_application(verb, cats("NP : oklahoma:e"))
    sentence = backward_application(cats("NP : texas:e"), vp)
    assert sentence.canonical == "S : (border:<e,<e,t>> texas:e oklahoma:e)"


def test_forward_composition_against_sequential_application(cats, mini_ontology):
    f = cats("N/N : (lambda $0:<e,t> (lambda $1:e (and:<t*,t> (major:<e,t> $1) ($0 $1))))")
    g = cats("N/NP : (lambda $0:e (lambda $1:e (in:<e,<e,t>> $1 $0)))")
    composed = forward_composition(f, g)
    assert composed is not None
    assert composed.syntax == Slash(Atomic("N"), FORWARD, Atomic("NP"))
    x = parse_expression("texas:e", mini_ontology)
    assert alpha_equal(apply_exp(composed.semantics, x),
                       apply_exp(f.semantics, apply_exp(g.semantics, x)))


def test_forward_composition_mismatch(cats):
    assert forward_composition(cats("N/N : (lambda $0:<e,t> $0)"),
                               cats("(S\\NP)/NP : (lambda $0:e (lambda $1:e "
                                    "(border:<e,<e,t>> $1 $0)))")) is None


def test_composition_coherence_random():
    rng = random.Random(41)
    generator = TermGenerator(rng)
    ontology = pool_ontology()
    f_sem_type = parse_type("<<e,t>,<e,t>>")
    g_sem_type = parse_type("<e,<e,t>>")
    f_syntax = parse_syntax("N/N")
    g_syntax = parse_syntax("N/NP")
    for _ in range(25):
        f = Category(f_syntax, generator.expr(f_sem_type, 4, []))
        g = Category(g_syntax, generator.expr(g_sem_type, 4, []))
        composed = forward_composition(f, g)
        assert composed is not None
        x = generator.expr(parse_type("e"), 2, [])
        assert alpha_equal(apply_exp(composed.semantics, x),
                           apply_exp(f.semantics, apply_exp(g.semantics, x)))


def test_backward_composition(cats, mini_ontology):
    # B\C + A\B => A\C  with f = right, g = left
    g = cats("N\\NP : (lambda $0:e (lambda $1:e (in:<e,<e,t>> $1 $0)))")
    f = cats("N\\N : (lambda $0:<e,t> (lambda $1:e (and:<t*,t> (major:<e,t> $1) ($0 $1))))")
    composed = backward_composition(g, f)
    assert composed is not None
    assert composed.syntax == Slash(Atomic("N"), BACKWARD, Atomic("NP"))
    x = parse_expression("texas:e", mini_ontology)
    assert alpha_equal(apply_exp(composed.semantics, x),
                       apply_exp(f.semantics, apply_exp(g.semantics, x)))
    assert backward_composition(f, g) is None  # wrong order does not chain


def test_combinator_outputs_satisfy_category_invariants(cats):
    from ccglearn.lambdas import is_closed
    verb = cats("(S\\NP)/NP : (lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))")
    obj = cats("NP : texas:e")
    subj = cats("NP : oklahoma:e")
    vp = forward_application(verb, obj)
    sentence = backward_application(subj, vp)
    for category in (vp, sentence):
        assert is_closed(category.semantics)
        if isinstance(category.syntax, Slash):
            assert category.semantics.type.is_function()
