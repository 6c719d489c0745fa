from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from kspace import parse_ring

GOLDEN = Path(__file__).parent / "golden"

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SMALL_SPECS = [
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
    "Z2xZ2", "Z2xZ3", "Z2xZ4", "Z2[x]/(x^2)", "Z2[x]/(x^2+x+1)", "Z2[x]/(x^3)",
    "Z2xZ2xZ2", "Z3[x]/(x^2)",
]
CORPUS_SPECS = SMALL_SPECS + ["Z9", "Z10", "Z12", "Z4[x]/(x^2)"]
FIELDS = ["Z2", "Z3", "Z5", "Z7", "Z11", "Z2[x]/(x^2+x+1)", "Z3[x]/(x^2+1)", "Z2[x]/(x^3+x+1)"]


@lru_cache(maxsize=None)
def ring(spec: str):
    return parse_ring(spec)


small_rings = st.sampled_from(SMALL_SPECS).map(ring)


@pytest.fixture
def Z4():
    return ring("Z4")


@pytest.fixture
def Z6():
    return ring("Z6")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
