from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from catlogic.order import (  # noqa: E402
    chain_poset,
    diamond_poset,
    enumerate_downsets,
    powerset_poset,
    v_poset,
)

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"

# acceptance lines collected by test_acceptance, printed in the terminal summary
ACCEPTANCE: dict[str, str] = {}


def corpus_posets():
    out = {f"chain:{n}": chain_poset(n) for n in range(1, 5)}
    out.update({f"powerset:{n}": powerset_poset(n) for n in range(1, 4)})
    out["diamond"] = diamond_poset()
    out["V"] = v_poset()
    return out


CORPUS = corpus_posets()
CORPUS_ALGEBRAS = {name: enumerate_downsets(p) for name, p in CORPUS.items()}


@pytest.fixture(scope="session")
def corpus():
    return CORPUS_ALGEBRAS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k)):
        terminalreporter.write_line(ACCEPTANCE[key])
