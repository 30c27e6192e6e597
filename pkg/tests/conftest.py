import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_text():
    with open(os.path.join(FIXTURES, "corpus_653.txt"), encoding="utf-8") as fh:
        return fh.read()
