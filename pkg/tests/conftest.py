import pytest

from scgkit import SolverConfig, random_pd_system


@pytest.fixture(scope="session")
def pd_systems():
    """Fifty unsymmetric positive definite systems of order 40."""
    return [random_pd_system(40, seed, 0.5) for seed in range(50)]


@pytest.fixture(scope="session")
def spd_systems():
    return [random_pd_system(30, 1000 + seed, 0.0) for seed in range(20)]


@pytest.fixture
def trace_cfg():
    return SolverConfig(record_directions=True, record_residuals=True)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
