"""Dataset fixtures."""

import sys

import pytest

from motzeta import bundled
from motzeta.resolution import BUNDLED


@pytest.fixture(params=BUNDLED)
def any_dataset(request):
    return bundled(request.param)


@pytest.fixture
def xy():
    return bundled("xy")


@pytest.fixture
def cusp():
    return bundled("cusp")


@pytest.fixture
def smooth():
    return bundled("smooth")


@pytest.fixture
def xsq():
    return bundled("xsq")



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
