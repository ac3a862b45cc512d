import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

_LINES: list[str] = []


class Criterion:
    """Collects failures for one acceptance criterion and reports a single line."""

    def __init__(self, number: int, name: str):
        self.number = number
        self.name = name
        self.checked = 0
        self.failures: list[str] = []
        self.detail = ""

    def check(self, ok: bool, what) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(what if isinstance(what, str) else what())

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None and not self.failures
        if exc_type is not None:
            why = f"raised {exc_type.__name__}: {exc}"
        elif self.failures:
            why = f"{len(self.failures)} of {self.checked} checks failed"
        else:
            why = f"{self.checked} checks"
        extra = f"; {self.detail}" if self.detail else ""
        line = f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}  {self.name} ({why}{extra})"
        print(line)
        _LINES.append(line)
        if exc_type is None and self.failures:
            raise AssertionError("\n".join(self.failures[:10]))
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
