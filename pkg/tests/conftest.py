import pytest

import soilfuzz as sf


@pytest.fixture(scope="session")
def variables():
    return sf.load_variables()


@pytest.fixture(scope="session")
def paper_preset():
    return sf.load_preset("paper")


@pytest.fixture(scope="session")
def calibrated_preset():
    return sf.load_preset("calibrated")


@pytest.fixture(scope="session")
def fixtures():
    return sf.reference_fixtures()
