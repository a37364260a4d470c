import random

import pytest

from permfam.field import build_field

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def field_id(pk):
    return f"{pk[0]}^{pk[1]}"


@pytest.fixture(params=SMALL_FIELDS, ids=field_id)
def small_field(request):
    return build_field(*request.param)


@pytest.fixture
def F4():
    return build_field(2, 1)


@pytest.fixture
def F9():
    return build_field(3, 1)


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


class _Criterion:
    def __init__(self, capsys):
        self._capsys = capsys

    def __call__(self, number: int, title: str):
        return _CriterionRecord(self._capsys, number, title)


class _CriterionRecord:
    def __init__(self, capsys, number, title):
        self.capsys, self.number, self.title = capsys, number, title
        self.details: list[str] = []

    def note(self, text: str) -> None:
        self.details.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        word = "PASS" if exc_type is None else "FAIL"
        line = f"[{word}] criterion {self.number}: {self.title}"
        if self.details:
            line += " (" + "; ".join(self.details) + ")"
        ACCEPTANCE_LINES.append(line)
        with self.capsys.disabled():
            print("\n" + line)
        return False


@pytest.fixture
def criterion(capsys):
    """Context manager that prints one PASS/FAIL line per acceptance criterion."""
    return _Criterion(capsys)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split("criterion ")[1]):
            terminalreporter.write_line(line)
