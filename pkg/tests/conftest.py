import pytest
from hypothesis import settings

from lct_kit.ideal import minimalize

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ideal():
    """Build an ideal from generator tuples."""

    def make(*gens, n=None):
        return minimalize(gens, n)

    return make


ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
