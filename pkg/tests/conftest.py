from __future__ import annotations

from hypothesis import settings, strategies as st

from evasive.graphs import Graph, num_pairs

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 2, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    return Graph(n, draw(st.integers(0, (1 << num_pairs(n)) - 1)))


@st.composite
def graphs_on(draw, n: int):
    return Graph(n, draw(st.integers(0, (1 << num_pairs(n)) - 1)))


@st.composite
def perms(draw, n: int):
    return draw(st.permutations(range(n)))


@st.composite
def graph_and_perm(draw, min_n: int = 2, max_n: int = 7):
    g = draw(graphs(min_n, max_n))
    return g, draw(st.permutations(range(g.n)))


# --------------------------------------------------------------------------
# acceptance bookkeeping: one PASS/FAIL line per criterion in the summary

_ACCEPTANCE: list[tuple[int, str, bool, float, float]] = []


def record_acceptance(number: int, title: str, passed: bool, seconds: float, limit: float) -> str:
    _ACCEPTANCE.append((number, title, passed, seconds, limit))
    return (f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title} "
            f"({seconds:.2f}s, limit {limit:g}s)")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, seconds, limit in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number:2d}  {title}  "
                                    f"({seconds:.2f}s, limit {limit:g}s)")
