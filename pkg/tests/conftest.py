"""Shared fixtures and the acceptance report hook."""

from pathlib import Path

import pytest

from surgesim import GainTable, SeawaySpec, ShipParams, load_ship_params

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "surgesim" / "data"

#: (criterion, passed, detail) rows filled by tests/test_acceptance.py;
#: passed is True, False, or None for a criterion that cannot run
ACCEPTANCE_RESULTS: list[tuple[str, bool | None, str]] = []


def record_criterion(name: str, passed: bool | None, detail: str) -> None:
    ACCEPTANCE_RESULTS.append((name, passed, detail))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def synthetic_ship() -> ShipParams:
    return load_ship_params(DATA_DIR / "synthetic.ship")


@pytest.fixture(scope="session")
def gain_table() -> GainTable:
    return GainTable.from_csv(DATA_DIR / "synthetic_gain.csv")


@pytest.fixture(scope="session")
def campaign_spec() -> SeawaySpec:
    return SeawaySpec(h13=0.1, t01=1.414, n_components=64, rng_seed=1234)


@pytest.fixture()
def oracle_ship() -> ShipParams:
    """Small hull with hand-checkable resistance and thrust values."""
    return ShipParams(length=2.0, mass=50.0, added_mass=5.0,
                      resistance_coeffs=(0.5, 0.2, 0.1, 0.01, 0.001),
                      thrust_deduction=0.1, wake_fraction=0.2,
                      prop_diameter=0.1, kt_coeffs=(0.5, -0.3, -0.1))


@pytest.fixture()
def linear_ship() -> ShipParams:
    """Hull whose drift reduces to a pure linear damping (kt = 0)."""
    return ShipParams(length=2.0, mass=0.7, added_mass=0.3,
                      resistance_coeffs=(2.0, 0.0, 0.0, 0.0, 0.0),
                      thrust_deduction=0.0, wake_fraction=0.0,
                      prop_diameter=0.1, kt_coeffs=(0.0, 0.0, 0.0))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        state = "SKIP" if passed is None else ("PASS" if passed else "FAIL")
        terminalreporter.write_line(f"[{state}] {name}: {detail}")
