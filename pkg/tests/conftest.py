import pytest

from gwdrops.transducer import DropSpec, TransducerPair, critical_mass, planck_mass
from gwdrops.units import constants, unit


@pytest.fixture(scope="session")
def C():
    return constants()


@pytest.fixture
def electron_drop():
    return DropSpec.electron()


@pytest.fixture
def planck_drop():
    return DropSpec(mass=planck_mass(), radius=0.3 * unit("mm"))


@pytest.fixture
def critical_drop():
    return DropSpec(mass=critical_mass(1), radius=0.145 * unit("mm"))


@pytest.fixture
def critical_pair(critical_drop):
    return TransducerPair.symmetric(critical_drop, 25 * unit("mm"), 12 * unit("GHz"))


@pytest.fixture
def electron_pair(electron_drop):
    return TransducerPair.symmetric(electron_drop, unit("um"), 12 * unit("GHz"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
