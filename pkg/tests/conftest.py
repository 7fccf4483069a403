from functools import lru_cache
from pathlib import Path

import pytest

from lieobs import io

DATA = Path(__file__).resolve().parent / "data"

CORPUS = sorted(p.stem for p in (DATA / "couplings").glob("*.json") if p.stem != "not_homomorphism")
ELEMENTS = sorted(p.stem for p in (DATA / "elements").glob("*.json"))


@lru_cache(maxsize=None)
def load_coupling(name):
    return io.parse_coupling(io.read_json(DATA / "couplings" / f"{name}.json"))


@lru_cache(maxsize=None)
def load_element(name):
    return io.parse_element(io.read_json(DATA / "elements" / f"{name}.json"))


@lru_cache(maxsize=None)
def load_algebra(name):
    return io.parse_algebra(io.read_json(DATA / "algebras" / f"{name}.json"))


def element_pairs():
    """Ordered pairs i <= j of elements in the same family (same base and reference)."""
    return [(a, b) for a in ELEMENTS for b in ELEMENTS if a[0] == b[0] and a <= b]


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
