from pathlib import Path

import pytest

from sitecolim import standard

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def one_cat():
    return standard.one()


@pytest.fixture(scope="session")
def two_cat():
    return standard.two()


@pytest.fixture(scope="session")
def diamond():
    return standard.diamond()


@pytest.fixture(scope="session")
def diamond_limits():
    return standard.diamond_limits()


@pytest.fixture(scope="session")
def consttwo():
    return standard.const_two_diagram()


@pytest.fixture(scope="session")
def consttwo_colim(consttwo):
    from sitecolim import build_pseudocolimit
    return build_pseudocolimit(consttwo)


@pytest.fixture(scope="session")
def diamondchain():
    return standard.diamond_chain_diagram()


@pytest.fixture(scope="session")
def diamondchain_colim(diamondchain):
    from sitecolim import build_pseudocolimit
    return build_pseudocolimit(diamondchain)
