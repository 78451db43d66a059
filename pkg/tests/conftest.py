import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from ccglearn import Lexicon, Ontology, parse_type

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "toy_geography"


@pytest.fixture(scope="session")
def geo_ontology() -> Ontology:
    return Ontology.load(DATA_DIR / "geo.ont")


@pytest.fixture(scope="session")
def geo_seed(geo_ontology) -> Lexicon:
    return Lexicon.load(DATA_DIR / "seed.lex", geo_ontology)


@pytest.fixture()
def mini_ontology() -> Ontology:
    """Small hand ontology used across grammar and chart tests."""
    return Ontology({
        "texas": parse_type("e"),
        "oklahoma": parse_type("e"),
        "austin": parse_type("e"),
        "york": parse_type("e"),
        "new_york": parse_type("e"),
        "city": parse_type("<e,t>"),
        "state": parse_type("<e,t>"),
        "capital": parse_type("<e,t>"),
        "major": parse_type("<e,t>"),
        "big": parse_type("<e,t>"),
        "new": parse_type("<e,t>"),
        "border": parse_type("<e,<e,t>>"),
        "near": parse_type("<e,<e,t>>"),
        "touch": parse_type("<e,<e,t>>"),
        "in": parse_type("<e,<e,t>>"),
    })


MINI_LEXICON_TEXT = r"""
# 20 entries, deliberately ambiguous
texas :- NP : texas:e
oklahoma :- NP : oklahoma:e
austin :- NP : austin:e
york :- NP : york:e
new york :- NP : new_york:e
borders :- (S\NP)/NP : (lambda $0:e (lambda $1:e (border:<e,<e,t>> $1 $0)))
borders :- (S\NP)/NP : (lambda $0:e (lambda $1:e (near:<e,<e,t>> $1 $0)))
touches :- (S\NP)/NP : (lambda $0:e (lambda $1:e (touch:<e,<e,t>> $1 $0)))
in :- (N\N)/NP : (lambda $0:e (lambda $1:<e,t> (lambda $2:e (and:<t*,t> ($1 $2) (in:<e,<e,t>> $2 $0)))))
in :- (S\NP)/NP : (lambda $0:e (lambda $1:e (in:<e,<e,t>> $1 $0)))
is :- (S\NP)/N : (lambda $0:<e,t> (lambda $1:e ($0 $1)))
a :- N/N : (lambda $0:<e,t> $0)
major :- N/N : (lambda $0:<e,t> (lambda $1:e (and:<t*,t> (major:<e,t> $1) ($0 $1))))
major :- N : (lambda $0:e (major:<e,t> $0))
big :- N/N : (lambda $0:<e,t> (lambda $1:e (and:<t*,t> (big:<e,t> $1) ($0 $1))))
new :- N/N : (lambda $0:<e,t> (lambda $1:e (and:<t*,t> (new:<e,t> $1) ($0 $1))))
city :- N : (lambda $0:e (city:<e,t> $0))
state :- N : (lambda $0:e (state:<e,t> $0))
capital :- N : (lambda $0:e (capital:<e,t> $0))
near :- (N\N)/NP : (lambda $0:e (lambda $1:<e,t> (lambda $2:e (and:<t*,t> ($1 $2) (near:<e,<e,t>> $2 $0)))))
"""


@pytest.fixture()
def mini_lexicon(mini_ontology) -> Lexicon:
    return Lexicon.loads(MINI_LEXICON_TEXT, mini_ontology)
