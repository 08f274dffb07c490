import pytest
from hypothesis import settings

from isotwist.parsing import fixture_path, load_fixture_action, load_presentation, load_symmetry
from isotwist.twist import TwistedSymmetry

settings.register_profile("kernel", max_examples=60, deadline=None)
settings.load_profile("kernel")


@pytest.fixture(scope="session")
def T2():
    return load_presentation(fixture_path("T2.alg")).source


@pytest.fixture(scope="session")
def C3():
    return load_presentation(fixture_path("C3.alg")).source


@pytest.fixture(scope="session")
def sl3(C3):
    return load_fixture_action("A2.sym", "C3.alg")


@pytest.fixture(scope="session")
def torus(T2):
    return load_symmetry(fixture_path("T2.sym")).bind(T2)


@pytest.fixture(scope="session")
def hopf(sl3):
    return TwistedSymmetry(sl3)


@pytest.fixture(scope="session")
def torus_hopf(torus):
    return TwistedSymmetry(torus)


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import GATE
    except ImportError:
        return
    if GATE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(GATE):
            terminalreporter.write_line(GATE[n])
