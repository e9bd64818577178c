import sys
from pathlib import Path

import pytest

# make the test-support modules (golden_docs, oracle, randdocs, rule_fixtures)
# importable regardless of how pytest was invoked
sys.path.insert(0, str(Path(__file__).parent))

from golden_docs import bjp_square_doc, karnataka_doc  # noqa: E402


@pytest.fixture
def bjp_doc():
    return bjp_square_doc()


@pytest.fixture
def karnataka():
    return karnataka_doc()


@pytest.fixture
def corpus_file(tmp_path):
    """Write documents to a temp .glocon.jsonl file and return its path."""
    from glocon.io import save_corpus

    def write(docs, name="corpus.glocon.jsonl"):
        path = tmp_path / name
        save_corpus(str(path), docs)
        return str(path)

    return write
