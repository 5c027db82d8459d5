"""Stars, cycles, strong products, BFS distances and graph serialization.

Vertices are integer ids ``0..N-1``. Product graphs additionally carry a
:class:`VertexKey` per id; for ``S_n ⊠ C_m`` the id of ``(i, j)`` is
``j * (n + 1) + i`` so id order is (cycle_index, star_index) order.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable

import numpy as np

from .errors import DisconnectedGraphError, InvalidParameterError, UsageError

KINDS = ("star", "cycle", "strong_product", "generic")


@dataclass(frozen=True, order=True)
class VertexKey:
    """Position of a product vertex: ``star_index`` 0 is the center."""

    cycle_index: int
    star_index: int

    def render(self) -> str:
        # display form is 1-based along the cycle
        return f"s{self.star_index}c{self.cycle_index + 1}"

    def as_pair(self) -> list[int]:
        return [self.star_index, self.cycle_index + 1]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "generic"
    n: int | None = None
    m: int | None = None
    vertices: tuple[Any, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown graph kind {self.kind!r}")
        if self.vertex_count < 0:
            raise InvalidParameterError("vertex_count must be non-negative")
        normalized = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise InvalidParameterError(f"self-loop at vertex {a}")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise InvalidParameterError(f"edge ({a}, {b}) references a missing vertex")
            e = (a, b) if a < b else (b, a)
            if e in normalized:
                raise InvalidParameterError(f"duplicate edge {e}")
            normalized.add(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if not self.vertices:
            object.__setattr__(self, "vertices", tuple(range(self.vertex_count)))
        elif len(self.vertices) != self.vertex_count:
            raise InvalidParameterError("vertices must list one key per vertex id")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def is_prismatic(self) -> bool:
        """True for a product ``S_n ⊠ C_m`` built from a star and a cycle."""
        return self.kind == "strong_product" and self.n is not None and self.m is not None

    @property
    def in_paper_range(self) -> bool:
        """Whether the closed-form results are stated for this graph."""
        if self.kind == "star":
            return self.n >= 2
        if self.kind == "cycle":
            return self.m >= 4
        if self.is_prismatic:
            return self.n >= 2 and self.m >= 4
        return False

    def vertex_id(self, star_index: int, cycle_index: int) -> int:
        if not self.is_prismatic:
            raise InvalidParameterError("vertex_id needs an S_n ⊠ C_m graph")
        return cycle_index * (self.n + 1) + star_index

    def render_vertex(self, v: int) -> str:
        key = self.vertices[v]
        if isinstance(key, VertexKey):
            return key.render()
        if self.kind == "star":
            return f"s{v}"
        if self.kind == "cycle":
            return f"c{v + 1}"
        return f"v{v}"

    def vertex_json(self, v: int):
        key = self.vertices[v]
        return key.as_pair() if isinstance(key, VertexKey) else v


def build_star(n: int) -> Graph:
    """Star with center 0 and leaves ``1..n``."""
    if n < 1:
        raise InvalidParameterError(f"star needs n >= 1, got {n}")
    return Graph(n + 1, tuple((0, k) for k in range(1, n + 1)), kind="star", n=n)


def build_cycle(m: int) -> Graph:
    if m < 3:
        raise InvalidParameterError(f"cycle needs m >= 3, got {m}")
    return Graph(m, tuple((j, (j + 1) % m) for j in range(m)), kind="cycle", m=m)


def build_complete(k: int) -> Graph:
    if k < 1:
        raise InvalidParameterError(f"complete graph needs k >= 1, got {k}")
    return Graph(k, tuple((a, b) for a in range(k) for b in range(a + 1, k)))


def strong_product(g1: Graph, g2: Graph) -> Graph:
    """Strong product; vertex ``(a, b)`` gets id ``b * |V1| + a``.

    Two vertices are adjacent when each coordinate is equal or adjacent and
    they are not identical.
    """
    if g1.vertex_count == 0 or g2.vertex_count == 0:
        raise InvalidParameterError("strong product needs nonempty factors")
    n1 = g1.vertex_count
    closed1 = [set(nb) | {a} for a, nb in enumerate(g1.adjacency)]
    closed2 = [set(nb) | {b} for b, nb in enumerate(g2.adjacency)]
    edges = []
    for b in range(g2.vertex_count):
        for a in range(n1):
            u = b * n1 + a
            for b2 in closed2[b]:
                for a2 in closed1[a]:
                    w = b2 * n1 + a2
                    if u < w:
                        edges.append((u, w))
    count = n1 * g2.vertex_count
    if g1.kind == "star" and g2.kind == "cycle":
        keys = tuple(VertexKey(cycle_index=b, star_index=a)
                     for b in range(g2.vertex_count) for a in range(n1))
        return Graph(count, tuple(edges), kind="strong_product", n=g1.n, m=g2.m, vertices=keys)
    keys = tuple((g1.vertices[a], g2.vertices[b])
                 for b in range(g2.vertex_count) for a in range(n1))
    return Graph(count, tuple(edges), kind="generic", vertices=keys)


def prismatic_network(n: int, m: int) -> Graph:
    """The strong prismatic network ``S_n ⊠ C_m``."""
    return strong_product(build_star(n), build_cycle(m))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    graph: Graph
    dist: np.ndarray
    diameter: int

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @cached_property
    def required(self) -> np.ndarray:
        """Per-pair minimum label gap ``diam + 1 - d``; zero on the diagonal."""
        req = self.diameter + 1 - self.dist
        np.fill_diagonal(req, 0)
        req.flags.writeable = False
        return req

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return int(self.dist[pair])


def _bfs(adjacency, source: int, size: int) -> list[int]:
    dist = [-1] * size
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Hop distances by one BFS per vertex."""
    size = g.vertex_count
    dist = np.zeros((size, size), dtype=np.int64)
    for s in range(size):
        row = _bfs(g.adjacency, s, size)
        if -1 in row:
            raise DisconnectedGraphError(s, row.index(-1))
        dist[s] = row
    dist.flags.writeable = False
    diameter = int(dist.max()) if size else 0
    return DistanceMatrix(g, dist, diameter)


def _dot(g: Graph) -> str:
    name = g.kind
    if g.is_prismatic:
        name = f"S{g.n}xC{g.m}"
    lines = [f'graph "{name}" {{']
    lines += [f"  {g.render_vertex(v)};" for v in range(g.vertex_count)]
    lines += [f"  {g.render_vertex(a)} -- {g.render_vertex(b)};" for a, b in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {
        "kind": g.kind,
        "n": g.n,
        "m": g.m,
        "vertex_count": g.vertex_count,
        "edges": [list(e) for e in g.edges],
    }


def export_graph(g: Graph, format: str) -> bytes:
    if format == "dot":
        return _dot(g).encode()
    if format in ("adjacency-json", "json"):
        return (json.dumps(graph_to_dict(g), indent=1) + "\n").encode()
    raise UsageError(f"unknown export format {format!r}; expected dot or adjacency-json")


def graph_from_dict(data: dict) -> Graph:
    for key in ("kind", "vertex_count", "edges"):
        if key not in data:
            raise UsageError(f"graph JSON is missing field {key!r}")
    kind, n, m = data["kind"], data.get("n"), data.get("m")
    if kind == "star":
        g = build_star(_int_field(data, "n"))
    elif kind == "cycle":
        g = build_cycle(_int_field(data, "m"))
    elif kind == "strong_product":
        g = prismatic_network(_int_field(data, "n"), _int_field(data, "m"))
    elif kind == "generic":
        try:
            g = Graph(_int_field(data, "vertex_count"), tuple(tuple(e) for e in data["edges"]))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"graph JSON field 'edges' is ill-formed: {exc}") from exc
        return g
    else:
        raise UsageError(f"graph JSON field 'kind' has unknown value {kind!r}")
    if data["vertex_count"] != g.vertex_count:
        raise UsageError("graph JSON field 'vertex_count' disagrees with kind parameters")
    if [list(e) for e in g.edges] != [list(e) for e in data["edges"]]:
        raise UsageError("graph JSON field 'edges' disagrees with kind parameters")
    return g


def _int_field(data: dict, key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise UsageError(f"graph JSON field {key!r} must be an integer")
    return value


def parse_graph(blob: bytes | str) -> Graph:
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise UsageError(f"graph JSON is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("graph JSON must be an object")
    return graph_from_dict(data)


def from_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(vertex_count, tuple(edges))
