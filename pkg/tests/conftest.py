import pytest

from mzvkit.numerics import make_context, use_cache


@pytest.fixture(autouse=True)
def _no_disk_cache():
    use_cache(None)
    yield
    use_cache(None)


@pytest.fixture
def ctx20():
    return make_context(20)


@pytest.fixture
def ctx30():
    return make_context(30)
