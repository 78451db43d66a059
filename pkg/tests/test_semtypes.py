import pytest

from ccglearn import FunctionType, Ontology, PrimitiveType, parse_type
from ccglearn.semtypes import OntologyError, TypeParseError, UndeclaredTypeError


def test_primitive():
    assert parse_type("e") == PrimitiveType("e")


def test_single_function():
    assert parse_type("<e,t>") == FunctionType(PrimitiveType("e"), PrimitiveType("t"))


def test_nested_function():
    et = FunctionType(PrimitiveType("e"), PrimitiveType("t"))
    assert parse_type("<<e,t>,<e,t>>") == FunctionType(et, et)


def test_variadic_domain():
    parsed = parse_type("<t*,t>")
    assert parsed.variadic
    assert parsed.domain == PrimitiveType("t")


def test_variadic_range_rejected():
    with pytest.raises(TypeParseError):
        parse_type("<t,t*>")


def test_unknown_primitive():
    with pytest.raises(UndeclaredTypeError):
        parse_type("<e,q>")


def test_declared_extra_primitive():
    parsed = parse_type("<e,loc>", frozenset({"e", "loc"}))
    assert parsed.range == PrimitiveType("loc")


@pytest.mark.parametrize("bad", ["", "<e,t", "<e t>", "e>", "<,t>", "<e,>", "<e,t>x"])
def test_malformed(bad):
    with pytest.raises((TypeParseError, UndeclaredTypeError)):
        parse_type(bad)


def test_parse_error_carries_offset():
    with pytest.raises(TypeParseError) as info:
        parse_type("<e,t")
    assert info.value.offset == 4


def test_print_round_trip():
    for text in ("e", "t", "i", "<e,t>", "<t*,t>", "<<e,t>,<e,<e,t>>>"):
        assert str(parse_type(text)) == text
        assert parse_type(str(parse_type(text))) == parse_type(text)


def test_ontology_reserves_connectives():
    ontology = Ontology()
    assert str(ontology.type_of("and")) == "<t*,t>"
    assert str(ontology.type_of("or")) == "<t*,t>"
    assert str(ontology.type_of("not")) == "<t,t>"


def test_ontology_rejects_retyping():
    ontology = Ontology()
    with pytest.raises(OntologyError):
        ontology.declare("and", parse_type("<e,t>"))
    # re-declaring at the same type is a no-op
    ontology.declare("not", parse_type("<t,t>"))


def test_ontology_rejects_undeclared_primitive_in_constant():
    ontology = Ontology()
    with pytest.raises(OntologyError):
        ontology.declare("where", FunctionType(PrimitiveType("loc"), PrimitiveType("t")))


def test_ontology_file_format():
    ontology = Ontology.loads(
        "# geography\n"
        ":primitive loc\n"
        "texas:e\n"
        "at:<e,loc>\n"
        "\n")
    assert "loc" in ontology.primitive_types
    assert str(ontology.type_of("at")) == "<e,loc>"


def test_ontology_file_errors():
    with pytest.raises(OntologyError):
        Ontology.loads("texas\n")
    with pytest.raises(OntologyError):
        Ontology.loads("at:<e,loc>\n")  # loc never declared
