# conftest.py
import pytest

from config import corpus_path
from data_parser import load_spec
from scalar import rational_domain, prime_field


@pytest.fixture
def Q():
    return rational_domain()


@pytest.fixture
def F3():
    return prime_field(3)


@pytest.fixture
def F5():
    return prime_field(5)


@pytest.fixture
def corpus_spec():
    """Loads a corpus document by file name."""
    def _load(file_name, validate=True):
        return load_spec(corpus_path(file_name), validate=validate)
    return _load
