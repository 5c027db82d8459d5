import itertools

from hypothesis import strategies as st

from starprism.graphs import Graph


@st.composite
def connected_graphs(draw, min_vertices=1, max_vertices=12):
    """Random spanning tree plus a random subset of the remaining pairs."""
    size = draw(st.integers(min_vertices, max_vertices))
    edges = set()
    for v in range(1, size):
        parent = draw(st.integers(0, v - 1))
        edges.add((parent, v))
    others = [p for p in itertools.combinations(range(size), 2) if p not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), max_size=len(others), unique=True))
        edges.update(extra)
    return Graph(size, tuple(edges))


def star_distance(a: int, b: int) -> int:
    if a == b:
        return 0
    return 1 if 0 in (a, b) else 2


def cycle_distance(a: int, b: int, m: int) -> int:
    d = abs(a - b) % m
    return min(d, m - d)


def naive_violations(dist, diameter, labels):
    """Double-loop radio-condition check, independent of the numpy verifier."""
    out = []
    size = len(labels)
    for u in range(size):
        for v in range(u + 1, size):
            need = diameter + 1 - dist[u][v]
            if abs(labels[u] - labels[v]) < need:
                out.append((u, v))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
