import pytest

from twistkick.beams import Amplitude, BeamSpec, normalize_amplitude

LAMBDA = 729e-9


@pytest.fixture(scope="session")
def paper_beam():
    return BeamSpec(wavelength=LAMBDA, pitch_angle=0.1, total_am=2, helicity=1,
                    envelope_width=10 * LAMBDA, power=4e-3)


@pytest.fixture(scope="session")
def paper_amp(paper_beam):
    return normalize_amplitude(paper_beam)


@pytest.fixture(scope="session")
def bessel_beam():
    """Pure Bessel beam used for the exact-beam formulas."""
    return BeamSpec(wavelength=LAMBDA, pitch_angle=0.2, total_am=2, helicity=1)


@pytest.fixture(scope="session")
def unit_amp():
    return Amplitude(1e-10)


ACCEPTANCE_LINES = []
_SESSION = {}


def pytest_sessionstart(session):
    import time
    _SESSION["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    import time
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _SESSION["start"]
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    status = "PASS" if elapsed < 120 else "FAIL"
    terminalreporter.write_line(f"[{status}] criterion 10 (runtime): session took {elapsed:.1f} s (limit 120 s)")
