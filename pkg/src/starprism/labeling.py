"""Radio labelings: the gap condition, verification, spans, greedy completion."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError, MalformedLabelingError, UsageError
from .graphs import DistanceMatrix, Graph, prismatic_network

METHODS = ("paper-literal", "ordering-greedy", "exact", "external")


@dataclass(frozen=True)
class RadioLabeling:
    """Labels indexed by vertex id."""

    labels: tuple[int, ...]
    method: str = "external"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    @property
    def span(self) -> int:
        return span(self)

    @property
    def normalized(self) -> bool:
        return bool(self.labels) and min(self.labels) == 0

    def normalize(self) -> RadioLabeling:
        low = min(self.labels)
        return RadioLabeling(tuple(x - low for x in self.labels), self.method)

    def shifted(self, offset: int) -> RadioLabeling:
        return RadioLabeling(tuple(x + offset for x in self.labels), self.method)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True, order=True)
class Violation:
    u: int
    v: int
    distance: int
    required_gap: int
    actual_gap: int


def required_gap(diam: int, distance: int) -> int:
    if not 1 <= distance <= diam:
        raise InvalidParameterError(f"distance {distance} outside [1, {diam}]")
    return diam + 1 - distance


def span(phi: RadioLabeling) -> int:
    if not phi.labels:
        raise InvalidParameterError("span of an empty labeling")
    return max(phi.labels) - min(phi.labels)


def _check_labels(dm: DistanceMatrix, phi: RadioLabeling) -> np.ndarray:
    if len(phi.labels) != dm.size:
        raise MalformedLabelingError(
            f"labeling covers {len(phi.labels)} vertices, graph has {dm.size}")
    arr = np.asarray(phi.labels, dtype=np.int64)
    if arr.size and arr.min() < 0:
        bad = int(np.argmin(arr))
        raise MalformedLabelingError(f"vertex {bad} has negative label {int(arr[bad])}")
    return arr


def verify(dm: DistanceMatrix, phi: RadioLabeling) -> list[Violation]:
    """All unordered pairs breaking the radio condition, sorted by (u, v)."""
    arr = _check_labels(dm, phi)
    gaps = np.abs(arr[:, None] - arr[None, :])
    bad = np.triu(gaps < dm.required, k=1)
    us, vs = np.nonzero(bad)
    return [
        Violation(int(u), int(v), int(dm.dist[u, v]), int(dm.required[u, v]), int(gaps[u, v]))
        for u, v in zip(us, vs)
    ]


def is_valid(dm: DistanceMatrix, phi: RadioLabeling) -> bool:
    return not verify(dm, phi)


def greedy_from_ordering(dm: DistanceMatrix, ordering: Sequence[int]) -> RadioLabeling:
    """Smallest labels that respect the radio condition, assigned in ``ordering``.

    Each vertex gets the least label compatible with every vertex placed
    before it, starting from 0.
    """
    order = [int(x) for x in ordering]
    if sorted(order) != list(range(dm.size)):
        raise InvalidParameterError("ordering is not a permutation of the vertices")
    req = dm.required
    labels = np.zeros(dm.size, dtype=np.int64)
    for i in range(1, len(order)):
        prev = order[:i]
        x = order[i]
        labels[x] = np.max(labels[prev] + req[x, prev])
    return RadioLabeling(tuple(labels.tolist()), "ordering-greedy")


# -- serialization ----------------------------------------------------------

def labeling_to_dict(dm: DistanceMatrix, phi: RadioLabeling) -> dict:
    g = dm.graph
    phi = phi.normalize() if phi.labels else phi
    valid = is_valid(dm, phi)
    return {
        "n": g.n,
        "m": g.m,
        "diameter": dm.diameter,
        "method": phi.method,
        "span": span(phi) if phi.labels else 0,
        "valid": valid,
        "labels": [{"vertex": g.vertex_json(v), "label": phi.labels[v]}
                   for v in range(g.vertex_count)],
    }


def dump_labeling(dm: DistanceMatrix, phi: RadioLabeling, **extra) -> str:
    data = labeling_to_dict(dm, phi)
    data.update(extra)
    return json.dumps(data, indent=1) + "\n"


def labeling_from_dict(data: dict, graph: Graph | None = None) -> tuple[Graph, RadioLabeling]:
    """Rebuild ``(graph, labeling)``; product graphs are rebuilt from n and m."""
    if not isinstance(data, dict):
        raise UsageError("labeling JSON must be an object")
    if graph is None:
        n, m = data.get("n"), data.get("m")
        if not isinstance(n, int) or not isinstance(m, int):
            raise UsageError("labeling JSON fields 'n' and 'm' must be integers")
        try:
            graph = prismatic_network(n, m)
        except InvalidParameterError as exc:
            raise UsageError(f"labeling JSON fields 'n'/'m': {exc}") from exc
    entries = data.get("labels")
    if not isinstance(entries, list):
        raise UsageError("labeling JSON field 'labels' must be a list")
    labels: list[int | None] = [None] * graph.vertex_count
    for entry in entries:
        try:
            vertex, label = entry["vertex"], entry["label"]
        except (TypeError, KeyError):
            raise UsageError("labeling JSON field 'labels' entries need 'vertex' and 'label'")
        if graph.is_prismatic:
            if not (isinstance(vertex, list) and len(vertex) == 2):
                raise UsageError(f"labeling JSON field 'vertex' must be [i, j], got {vertex!r}")
            i, j = vertex
            if not (0 <= i <= graph.n and 1 <= j <= graph.m):
                raise UsageError(f"labeling JSON field 'vertex' out of range: {vertex!r}")
            v = graph.vertex_id(i, j - 1)
        else:
            v = vertex
            if not isinstance(v, int) or not 0 <= v < graph.vertex_count:
                raise UsageError(f"labeling JSON field 'vertex' out of range: {vertex!r}")
        if not isinstance(label, int) or isinstance(label, bool):
            raise UsageError(f"labeling JSON field 'label' must be an integer, got {label!r}")
        if labels[v] is not None:
            raise MalformedLabelingError(f"vertex {vertex!r} labeled twice")
        labels[v] = label
    missing = [graph.vertex_json(v) for v, x in enumerate(labels) if x is None]
    if missing:
        raise MalformedLabelingError(f"no label for vertex {missing[0]!r}")
    return graph, RadioLabeling(tuple(labels), data.get("method", "external"))


def violations_csv(graph: Graph, violations: Sequence[Violation]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u", "v", "distance", "required_gap", "actual_gap"])
    for x in violations:
        w.writerow([graph.render_vertex(x.u), graph.render_vertex(x.v),
                    x.distance, x.required_gap, x.actual_gap])
    return buf.getvalue()
