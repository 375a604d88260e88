import pytest

from prosogen import load_kb, stereo_kb_path
from prosogen.discourse import DiscourseModel


@pytest.fixture(scope="session")
def stereo_text():
    with open(stereo_kb_path(), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def stereo(stereo_text):
    return load_kb(stereo_text)


@pytest.fixture
def fresh():
    return DiscourseModel()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
