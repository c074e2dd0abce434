import pytest

from ontoforge.corpus import build_mutants, build_teaching_ontology


@pytest.fixture
def corpus():
    return build_teaching_ontology()


@pytest.fixture
def mutants():
    return {fx.stem: fx for fx in build_mutants()}
