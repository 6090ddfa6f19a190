import pytest

from signedflow import fixtures
from signedflow.core import Edge, SignedGraph

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0]), k)):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}")


def graph(*edges, vertices=None):
    """``graph(("a", "u", "v", 1), ...)`` with vertices in first-seen order."""
    if vertices is None:
        vertices = list(dict.fromkeys(v for _, a, b, _ in edges for v in (a, b)))
    return SignedGraph.build(vertices, edges)


@pytest.fixture
def g2():
    return fixtures.g2()


@pytest.fixture
def g3():
    return fixtures.g3()


@pytest.fixture
def g5():
    return fixtures.g5()


@pytest.fixture
def tri():
    return fixtures.triangle()
