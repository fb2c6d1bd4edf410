import pytest

from razavy_dw import PotentialParams, coupled_eigensystem, solve_single_well

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def params():
    return PotentialParams()


@pytest.fixture(scope="session")
def well(params):
    return solve_single_well(params)


@pytest.fixture(scope="session")
def spectra(well):
    """Coupled spectra at the three couplings used throughout the tables."""
    return {g: coupled_eigensystem(well, g) for g in (0.0, 0.1, 0.2)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
