import pytest

from attacktrees import fixtures, parse_arena, parse_stree, parse_tree


@pytest.fixture(scope="session")
def thief():
    return parse_arena(fixtures.text("thief.arena"))


@pytest.fixture(scope="session")
def toy():
    return parse_arena(fixtures.text("toy.arena"))


def load_tree(name):
    return parse_tree(fixtures.text(name))


def load_stree(name):
    return parse_stree(fixtures.text(name))


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
