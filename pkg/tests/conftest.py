import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def micro_snapshot():
    from ontorich.ontology import build_ontology_view
    from ontorich.turtle import parse_turtle

    return build_ontology_view(
        parse_turtle((FIXTURES / "micro1.ttl").read_text(encoding="utf-8")))


@pytest.fixture
def it_snapshot():
    from ontorich.ontology import build_ontology_view
    from ontorich.turtle import parse_turtle

    return build_ontology_view(
        parse_turtle((FIXTURES / "it.ttl").read_text(encoding="utf-8")))


@pytest.fixture
def mini_lexicon():
    from ontorich.lexicon import load_lexicon

    return load_lexicon(FIXTURES / "mini-lexicon.lex")


@pytest.fixture
def workspace(tmp_path):
    from ontorich.workspace import Workspace

    return Workspace(tmp_path / "ws")
