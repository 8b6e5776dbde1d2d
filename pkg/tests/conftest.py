from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from gia.cli import parse_graph
from gia.graph_core import EGraph

from oracles import MULTS

settings.register_profile("gia", deadline=None, max_examples=100)
settings.load_profile("gia")

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURES.glob("*.json"))


def load(name: str) -> EGraph:
    return parse_graph((FIXTURES / f"{name}.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def G():
    """All named fixture graphs, keyed by file stem."""
    return {name: load(name) for name in FIXTURE_NAMES}


@st.composite
def graphs(draw, max_n=5, mults=MULTS):
    n = draw(st.integers(1, max_n))
    vs = [f"v{i}" for i in range(n)]
    cells = draw(st.lists(st.sampled_from(mults), min_size=n * n, max_size=n * n))
    mult = {(vs[k // n], vs[k % n]): x for k, x in enumerate(cells) if x}
    return EGraph(vs, mult)


_acceptance_lines: list[str] = []


@pytest.fixture
def report():
    """Record one line per acceptance criterion for the terminal summary."""
    return _acceptance_lines.append


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
