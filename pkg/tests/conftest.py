import pytest

from subspace.core.env import configure, settings


@pytest.fixture(autouse=True)
def quiet_settings():
    saved = dict(vars(settings))
    configure(quiet=True)
    yield settings
    configure(**saved)
