import os

import pytest
from hypothesis import HealthCheck, settings

from critex import _kernels
from critex._kernels import _pykernels

try:
    from critex._kernels import _ckernels
except ImportError:
    _ckernels = None

settings.register_profile(
    "critex", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "critex"))

BACKENDS = ["python", "cython"]


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per kernel backend."""
    if request.param == "cython":
        if _ckernels is None:
            pytest.skip("compiled kernels not built")
        monkeypatch.setattr(_kernels, "_impl", _ckernels)
    else:
        monkeypatch.setattr(_kernels, "_impl", _pykernels)
    return request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
