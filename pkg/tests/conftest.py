import io

import pytest

from vadminer.analyses import score_corpus
from vadminer.lexicon import load_lexicon
from vadminer.synth import generate_corpus, generate_lexicon, planted_config

TABLE1_CSV = """word,valence,arousal,dominance
anger,2.50,5.93,5.14
joy,8.21,5.55,7.00
sadness,2.40,2.81,3.84
love,8.00,5.36,5.92
"""


@pytest.fixture(scope="session")
def table1_lexicon():
    return load_lexicon(io.StringIO(TABLE1_CSV))


@pytest.fixture(scope="session")
def synth_lexicon():
    return generate_lexicon()


@pytest.fixture(scope="session")
def planted_corpus(synth_lexicon):
    issues, manifest = generate_corpus(planted_config(2000), seed=11235)
    return issues, manifest


@pytest.fixture(scope="session")
def planted_scored(planted_corpus, synth_lexicon):
    issues, _ = planted_corpus
    return score_corpus(issues, synth_lexicon)
