import pytest

from src.surfaces.torus import decide_torus

from .samples import GOLDEN, SEXTIC_SQUARE, SMALLEST_QUARTIC


@pytest.fixture(scope="session")
def sextic_witness():
    return decide_torus(SEXTIC_SQUARE).witness


@pytest.fixture(scope="session")
def golden_witness():
    return decide_torus(GOLDEN).witness


@pytest.fixture(scope="session")
def quartic_witness():
    return decide_torus(SMALLEST_QUARTIC).witness
