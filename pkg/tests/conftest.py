import pytest
from hypothesis import HealthCheck, settings

from epsdens.core import RingDescriptor

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def R3():
    return RingDescriptor(3, ("X", "Y", "Z"))


@pytest.fixture
def R2():
    return RingDescriptor(2, ("X", "Y"))



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split(":")[0].split()[1])):
        terminalreporter.write_line(line)
