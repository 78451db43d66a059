import pytest

from ccglearn import (
    LexicalEntry,
    Lexeme,
    LexicalTemplate,
    Lexicon,
    alpha_equal,
    factor_entry,
    instantiate,
    parse_category_text,
    parse_expression,
    parse_type,
)
from ccglearn.lexicon import (
    ORIGIN_GENLEX,
    ORIGIN_SEED,
    LexiconError,
    is_placeholder,
    placeholder,
)


@pytest.fixture()
def entry(mini_ontology):
    def make(text, origin=ORIGIN_SEED):
        tokens, _, category_text = text.partition(":-")
        return LexicalEntry(tokens.split(),
                            parse_category_text(category_text.strip(), mini_ontology),
                            origin)
    return make


def test_entry_normalizes_tokens(mini_ontology):
    made = LexicalEntry(("Texas",), parse_category_text("NP : texas:e", mini_ontology))
    assert made.tokens == ("texas",)


def test_entry_rejects_bad_tokens(mini_ontology):
    category = parse_category_text("NP : texas:e", mini_ontology)
    with pytest.raises(LexiconError):
        LexicalEntry((), category)
    with pytest.raises(LexiconError):
        LexicalEntry(("new york",), category)


def test_entry_identity_ignores_origin(entry):
    a = entry("texas :- NP : texas:e", ORIGIN_SEED)
    b = entry("texas :- NP : texas:e", ORIGIN_GENLEX)
    assert a == b and hash(a) == hash(b)


# --- factoring -------------------------------------------------------------------

def test_factor_simple_proper_noun(entry):
    lexeme, template = factor_entry(entry("texas :- NP : texas:e"))
    assert [c.name for c in lexeme.constants] == ["texas"]
    assert template.canonical == "NP : #0:e"
    assert template.arity == 1


def test_factor_modifier(entry):
    source = entry("major :- N/N : (lambda $0:<e,t> (lambda $1:e "
                   "(and:<t*,t> (major:<e,t> $1) ($0 $1))))")
    lexeme, template = factor_entry(source)
    assert [c.name for c in lexeme.constants] == ["major"]
    assert template.arity == 1
    assert "#0" in template.canonical
    assert "and:<t*,t>" in template.canonical  # connectives stay put


def test_factor_repeated_constant_shares_placeholder(mini_ontology):
    category = parse_category_text(
        "N : (lambda $0:e (and:<t*,t> (city:<e,t> $0) (city:<e,t> $0)))", mini_ontology)
    lexeme, template = factor_entry(LexicalEntry(("cityish",), category))
    assert template.arity == 1
    assert template.canonical.count("#0") == 2


def test_factor_instantiate_round_trip(mini_lexicon):
    for source in mini_lexicon:
        lexeme, template = factor_entry(source)
        rebuilt = instantiate(template, lexeme)
        assert rebuilt is not None
        assert rebuilt.tokens == source.tokens
        assert rebuilt.category.syntax == source.category.syntax
        assert alpha_equal(rebuilt.category.semantics, source.category.semantics)


def test_instantiate_arity_mismatch(entry):
    _, template = factor_entry(
        entry("borders :- (S\\NP)/NP : (lambda $0:e (lambda $1:e "
              "(border:<e,<e,t>> $1 $0)))"))
    assert instantiate(template, Lexeme(("x",), ())) is None


def test_instantiate_type_mismatch(entry):
    from ccglearn.lambdas import Constant
    _, template = factor_entry(entry("texas :- NP : texas:e"))
    wrong = Lexeme(("city",), (Constant("city", parse_type("<e,t>")),))
    assert instantiate(template, wrong) is None


def test_instantiate_tags_origin(entry):
    lexeme, template = factor_entry(entry("texas :- NP : texas:e"))
    rebuilt = instantiate(template, Lexeme(("utah",), lexeme.constants))
    assert rebuilt.origin == ORIGIN_GENLEX


def test_lexeme_rejects_connectives():
    from ccglearn.lambdas import Constant
    with pytest.raises(LexiconError):
        Lexeme(("foo",), (Constant("and", parse_type("<t*,t>")),))


def test_placeholder_helpers():
    spot = placeholder(2, parse_type("e"))
    assert spot.name == "#2"
    assert is_placeholder(spot)


def test_template_placeholder_order_enforced(mini_ontology):
    skeleton = parse_expression("(#1:<e,t> #0:e)",
                                _permissive(mini_ontology))
    with pytest.raises(LexiconError):
        LexicalTemplate(parse_category_text("S : t0:t", _ont_t()).syntax, skeleton, 2)


def _permissive(ontology):
    import copy
    clone = copy.deepcopy(ontology)
    clone.permissive = True
    return clone


def _ont_t():
    from ccglearn import Ontology
    return Ontology({"t0": parse_type("t")})


# --- lexicon container ---------------------------------------------------------

def test_lookup_empty(mini_ontology):
    assert Lexicon().lookup(("texas",)) == []


def test_add_and_dedup(entry):
    lexicon = Lexicon()
    assert lexicon.add(entry("texas :- NP : texas:e"))
    assert not lexicon.add(entry("texas :- NP : texas:e", ORIGIN_GENLEX))
    assert len(lexicon) == 1


def test_lookup_factored_expansion(entry, mini_ontology):
    lexicon = Lexicon()
    # one arity-1 lexeme, three templates of which two are type-compatible
    np_lexeme, np_template = factor_entry(entry("texas :- NP : texas:e"))
    _, noun_template = factor_entry(entry("city :- N : (lambda $0:e (city:<e,t> $0))"))
    _, verb_template = factor_entry(
        entry("borders :- (S\\NP)/NP : (lambda $0:e (lambda $1:e "
              "(border:<e,<e,t>> $1 $0)))"))
    lexicon.add_lexeme(np_lexeme)
    for template in (np_template, noun_template, verb_template):
        lexicon.add_template(template)
    found = lexicon.lookup(("texas",))
    # texas:e fits NP : #0:e; it does not fit the noun or verb placeholders
    assert len(found) == 1
    assert found[0].category.canonical == "NP : texas:e"

    e_noun = entry("major :- N : (lambda $0:e (major:<e,t> $0))")
    major_lexeme, _ = factor_entry(e_noun)
    lexicon.add_lexeme(major_lexeme)
    found = lexicon.lookup(("major",))
    assert len(found) == 1  # fits only the noun template
    assert found[0].category.canonical == "N : (lambda $0:e (major:<e,t> $0))"


def test_lookup_dedups_direct_and_factored(entry):
    lexicon = Lexicon()
    direct = entry("texas :- NP : texas:e")
    lexicon.add(direct)
    lexeme, template = factor_entry(direct)
    lexicon.add_lexeme(lexeme)
    lexicon.add_template(template)
    found = lexicon.lookup(("texas",))
    assert len(found) == 1
    assert found[0].origin == ORIGIN_SEED  # the direct entry wins


def test_lookup_is_pure(entry):
    lexicon = Lexicon([entry("texas :- NP : texas:e")])
    first = lexicon.lookup(("texas",))
    second = lexicon.lookup(("texas",))
    assert first == second


def test_max_tokens(entry):
    lexicon = Lexicon([entry("new york :- NP : new_york:e")])
    assert lexicon.max_tokens() == 2
    assert Lexicon().max_tokens() == 0


# --- file round trip -------------------------------------------------------------

def test_load_save_round_trip(mini_ontology, tmp_path):
    text = ("texas :- NP : texas:e\n"
            "# comment\n"
            "\n"
            "borders :- (S\\NP)/NP : "
            "(lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))\n")
    lexicon = Lexicon.loads(text, mini_ontology)
    assert len(lexicon) == 2
    path = tmp_path / "roundtrip.lex"
    lexicon.save(path)
    reloaded = Lexicon.load(path, mini_ontology)
    assert sorted(str(e) for e in reloaded) == sorted(str(e) for e in lexicon)


def test_load_reports_line_numbers(mini_ontology):
    with pytest.raises(LexiconError) as info:
        Lexicon.loads("texas NP texas:e\n", mini_ontology)
    assert "line 1" in str(info.value)


def test_seed_lexicon_file_loads(geo_seed):
    assert len(geo_seed) == 24
    assert geo_seed.lookup(("texas",))[0].origin == ORIGIN_SEED
