from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"

# acceptance results collected for the terminal summary
CRITERIA: dict[int, tuple[str, bool, float, float]] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def corpus():
    from bikernel.corpus import grow_corpus
    return grow_corpus(0, 40)


@pytest.fixture(scope="session")
def univalent_corpus(corpus):
    return [m for m in corpus if m.univalent]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, elapsed, bound = CRITERIA[n]
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {mark}  {elapsed:6.2f}s / {bound:.0f}s  {title}")
