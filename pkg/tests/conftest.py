import pytest

from sigsolve.catalog import BEER_QUICHE_TEXT, beer_quiche


@pytest.fixture(scope="session")
def beerquiche():
    return beer_quiche()


@pytest.fixture
def beerquiche_file(tmp_path):
    path = tmp_path / "beerquiche.sg"
    path.write_text(BEER_QUICHE_TEXT)
    return str(path)
