import pytest

from rankext.algebra.gf import make_field
from rankext.algebra.matfq import MatrixFq
from rankext.algebra.paths import Pattern
from rankext.core.config import settings


@pytest.fixture
def gf2():
    return make_field(2)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.fixture
def mat():
    """Build a matrix from nested lists: mat(F, [[1, 0], [0, 1]])."""
    return MatrixFq.from_rows


@pytest.fixture
def demo3x5():
    return Pattern.from_positions(3, 5, [(1, 1), (1, 4), (2, 2), (2, 4), (3, 1), (3, 2)])


@pytest.fixture
def demo3x3():
    return Pattern.from_positions(3, 3, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])


@pytest.fixture
def caps():
    """Restore the search caps after a test lowers them."""
    saved = settings.model_dump()
    yield settings
    for key, value in saved.items():
        setattr(settings, key, value)
