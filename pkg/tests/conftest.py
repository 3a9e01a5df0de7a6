import pytest

from kgsemcom.corpus import Corpus, SourceSample
from kgsemcom.kg_store import Triple, build_dictionary, build_kg
from kgsemcom.synthdata import generate_corpora


@pytest.fixture(scope="session")
def corpora():
    """One shared (train, test) pair; generation is deterministic."""
    return generate_corpora(seed=11)


@pytest.fixture(scope="session")
def train_corpus(corpora):
    return corpora[0]


@pytest.fixture(scope="session")
def test_corpus(corpora):
    return corpora[1]


def small_corpus() -> Corpus:
    samples = (
        SourceSample(
            id="s0",
            triples=(
                Triple("Aarhus Airport", "runway length", "2702.0"),
                Triple("Aarhus Airport", "serves", "Aarhus"),
            ),
            texts=(
                "Aarhus Airport serves Aarhus. The runway length of Aarhus Airport is 2702.0.",
                "Aarhus Airport, which serves Aarhus, has a runway length of 2702.0.",
            ),
        ),
        SourceSample(
            id="s1",
            triples=(
                Triple("Aarhus", "leader", "Jacob Bundsgaard"),
                Triple("Aarhus", "country", "Denmark"),
            ),
            texts=(
                "The leader of Aarhus is Jacob Bundsgaard. Aarhus is in Denmark.",
            ),
        ),
        SourceSample(
            id="s2",
            triples=(Triple("Batchoy", "ingredient", "Chicken"),),
            texts=("Batchoy includes Chicken.", "Chicken is part of Batchoy."),
        ),
    )
    return Corpus(samples=samples, split="test")


@pytest.fixture
def tiny_corpus():
    return small_corpus()


@pytest.fixture
def tiny_world(tiny_corpus):
    kg = build_kg(tiny_corpus)
    return kg, build_dictionary(kg)
