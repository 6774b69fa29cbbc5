import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ckp.core import FockVector  # noqa: E402
from ckp.hwv import graded_basis  # noqa: E402

settings.register_profile(
    "ckp",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ckp")


def odd_indices(bound2):
    """Strategy for doubled half-odd indices with ``|a| <= bound2 / 2``."""
    return st.integers(-bound2, bound2).filter(lambda a2: a2 % 2 != 0)


def basis_monomials(max_d2):
    return st.integers(0, max_d2).flatmap(lambda d: st.sampled_from(graded_basis(d).monomials))


def fock_vectors(max_d2, max_terms=4):
    """Small inhomogeneous vectors with nonzero integer coefficients."""
    coeffs = st.integers(-5, 5).filter(bool)
    return st.dictionaries(basis_monomials(max_d2), coeffs, min_size=1, max_size=max_terms).map(FockVector)


# ---------------------------------------------------------------------------
# acceptance criteria report

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, tolerance): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    number, title, tolerance = marker.args
    status = "PASS" if report.passed else "FAIL"
    previous = _CRITERIA.get(number)
    if previous is None or previous[2] == "PASS":
        _CRITERIA[number] = (title, tolerance, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, tolerance, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}  [{tolerance}]")
