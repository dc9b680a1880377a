import contextlib
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("fsneg", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fsneg")

_CRITERIA = []


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line."""

    def __init__(self, number, title, budget, tolerance="exact"):
        self.number, self.title, self.budget, self.tolerance = number, title, budget, tolerance
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    @contextlib.contextmanager
    def run(self):
        t0 = time.perf_counter()
        ok = False
        try:
            yield self
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            if ok and elapsed >= self.budget:
                ok = False
                self.notes.append(f"over budget {self.budget:g}s")
            line = (
                f"criterion {self.number} {'PASS' if ok else 'FAIL'}: {self.title} "
                f"[tolerance {self.tolerance}, {elapsed:.2f}s < {self.budget:g}s]"
            )
            if self.notes:
                line += " " + "; ".join(self.notes)
            _CRITERIA.append(line)
            print(line)
        assert elapsed < self.budget, f"criterion {self.number} took {elapsed:.1f}s, budget {self.budget:g}s"


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
