import pytest

from gamesight.games.levels import load_default_pack


@pytest.fixture(scope="session")
def default_pack():
    return load_default_pack()
