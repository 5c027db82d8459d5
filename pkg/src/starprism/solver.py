"""Exact radio numbers for small graphs and the (n, m) parameter sweep.

Both exact methods search over vertex orderings: every radio labeling
sorted by label is one ordering, and greedy completion of an ordering is
pointwise minimal, so the radio number is the minimum greedy span over
all orderings.
"""
from __future__ import annotations

import csv
import io
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .construction import DEFAULT_SEEDS, check_theorem_range, closed_form_rn, construct_best
from .errors import OracleSizeError, TheoremRangeError, UsageError
from .graphs import DistanceMatrix, all_pairs_distances, prismatic_network
from .labeling import RadioLabeling, greedy_from_ordering, verify

log = logging.getLogger(__name__)

BRUTE_FORCE_CAP = 10
PROVEN = "proven"
BUDGET_EXCEEDED = "budget-exceeded-upper-bound"
SKIPPED = "skipped"

# memo entries beyond this are not stored; pruning stays correct, just weaker
MEMO_LIMIT = 4_000_000


@dataclass(frozen=True)
class ExactResult:
    optimum: int
    labeling: RadioLabeling
    status: str
    nodes_explored: int
    elapsed: float
    incumbents: tuple[int, ...] = ()
    ordering: tuple[int, ...] = ()

    @property
    def proven(self) -> bool:
        return self.status == PROVEN


def brute_force_rn(dm: DistanceMatrix) -> ExactResult:
    """Minimum greedy span over every ordering, evaluated in numpy batches.

    Kept deliberately free of pruning so it can referee :func:`exact_rn`.
    """
    size = dm.size
    if size > BRUTE_FORCE_CAP:
        raise OracleSizeError(f"brute force is capped at {BRUTE_FORCE_CAP} vertices, got {size}")
    start = time.perf_counter()
    if size <= 1:
        return ExactResult(0, RadioLabeling((0,) * size, "exact"), PROVEN, 1,
                           time.perf_counter() - start, (0,), tuple(range(size)))

    req = dm.required.astype(np.int32)
    base = np.array(list(itertools.permutations(range(size - 1))), dtype=np.intp)
    best_span, best_order, count = None, None, 0
    for first in range(size):
        rest = np.array([v for v in range(size) if v != first], dtype=np.intp)
        perms = np.concatenate([np.full((len(base), 1), first), rest[base]], axis=1)
        labels = np.zeros(perms.shape, dtype=np.int32)
        for i in range(1, size):
            xi = perms[:, i]
            acc = labels[:, 0] + req[xi, perms[:, 0]]
            for j in range(1, i):
                np.maximum(acc, labels[:, j] + req[xi, perms[:, j]], out=acc)
            labels[:, i] = acc
        spans = labels[:, -1]
        k = int(np.argmin(spans))
        count += len(perms)
        if best_span is None or spans[k] < best_span:
            best_span, best_order = int(spans[k]), tuple(int(x) for x in perms[k])
    phi = greedy_from_ordering(dm, best_order)
    return ExactResult(best_span, RadioLabeling(phi.labels, "exact"), PROVEN, count,
                       time.perf_counter() - start, (best_span,), best_order)


class _OutOfBudget(Exception):
    pass


def _initial_incumbent(dm: DistanceMatrix, seeds) -> tuple[int, ...]:
    g = dm.graph
    if g.is_prismatic:
        try:
            check_theorem_range(g.n, g.m)
        except TheoremRangeError:
            pass
        else:
            report = construct_best(g.n, g.m, seeds, dm=dm)
            labels = report.labeling.labels
            return tuple(sorted(range(dm.size), key=lambda v: labels[v]))
    return tuple(range(dm.size))


def exact_rn(dm: DistanceMatrix, budget: float = 60.0, seed: int = 0,
             seeds: Sequence[int] | None = None, max_nodes: int | None = None) -> ExactResult:
    """Branch and bound over label-increasing vertex orderings.

    A partial ordering fixes the labels of its prefix; ``est[y]`` is the
    least label an unplaced ``y`` could still take. The final span is at
    least every ``est[y]`` and at least ``min(est) + remaining - 1``.
    Prefixes whose still-binding vertices (those whose constraints can
    reach past the last label) coincide in identity and relative offset
    are equivalent up to a shift, so only the lowest one is expanded.

    ``budget`` is wall-clock seconds; ``max_nodes`` an optional node cap.
    On exhaustion the best span found so far is returned as an upper bound.
    """
    start = time.perf_counter()
    size = dm.size
    if seeds is None:
        seeds = tuple(range(seed, seed + len(DEFAULT_SEEDS)))
    order0 = _initial_incumbent(dm, seeds)
    first = greedy_from_ordering(dm, order0)
    best = [max(first.labels) if size else 0]
    best_order = [order0]
    incumbents = [best[0]]

    def result(status, nodes):
        phi = greedy_from_ordering(dm, best_order[0])
        return ExactResult(best[0], RadioLabeling(phi.labels, "exact"), status, nodes,
                           time.perf_counter() - start, tuple(incumbents), tuple(best_order[0]))

    if budget <= 0 or max_nodes == 0:
        return result(BUDGET_EXCEEDED, 0)
    if size <= 1:
        return result(PROVEN, 1)

    diam = dm.diameter
    req = dm.required.tolist()
    floor = max(size - 1, diam)
    deadline = start + budget
    lab = [0] * size
    order: list[int] = []
    memo: dict = {}
    nodes = [0]

    def expand(last: int, mask: int, est: list[int]) -> bool:
        nodes[0] += 1
        if nodes[0] & 1023 == 0 and time.perf_counter() > deadline:
            raise _OutOfBudget
        if max_nodes is not None and nodes[0] > max_nodes:
            raise _OutOfBudget
        free = [y for y in range(size) if not mask >> y & 1]
        if not free:
            if last < best[0]:
                best[0] = last
                best_order[0] = tuple(order)
                incumbents.append(last)
            return best[0] <= floor
        ests = [est[y] for y in free]
        bound = max(max(ests), min(ests) + len(free) - 1)
        if bound >= best[0]:
            return False

        threshold = last + 2 - diam
        window = []
        for v in reversed(order):
            if lab[v] < threshold:
                break
            window.append((v, last - lab[v]))
        key = (mask, tuple(window))
        seen = memo.get(key)
        if seen is not None and seen <= last:
            return False
        if seen is not None or len(memo) < MEMO_LIMIT:
            memo[key] = last

        for y in sorted(free, key=lambda y: (est[y], y)):
            label = est[y]
            if label + len(free) - 1 >= best[0]:
                break
            lab[y] = label
            order.append(y)
            row = req[y]
            child = est[:]
            for z in free:
                if row[z] + label > child[z]:
                    child[z] = row[z] + label
            done = expand(label, mask | 1 << y, child)
            order.pop()
            if done:
                return True
        return False

    try:
        for x in range(size):
            if best[0] <= floor:
                break
            lab[x] = 0
            order.append(x)
            est = [req[x][z] for z in range(size)]
            done = expand(0, 1 << x, est)
            order.pop()
            if done:
                break
    except _OutOfBudget:
        return result(BUDGET_EXCEEDED, nodes[0])
    return result(PROVEN, nodes[0])


# -- sweep --------------------------------------------------------------------

CSV_HEADER = ["n", "m", "parity", "formula_rn", "constructed_span",
              "paper_literal_violations", "exact_rn", "exact_status", "elapsed_ms"]


@dataclass(frozen=True)
class SweepRecord:
    n: int
    m: int
    parity: str
    formula_rn: int
    constructed_span: int
    paper_literal_violations: int
    exact_rn: int | None
    exact_status: str
    elapsed_ms: int | None = field(default=None, compare=False)

    @property
    def delta(self) -> int | None:
        """Closed form minus exact value; None without an exact solve."""
        return None if self.exact_rn is None else self.formula_rn - self.exact_rn


def sweep_grid(n_range: tuple[int, int], m_range: tuple[int, int]) -> list[tuple[int, int]]:
    pairs = []
    for n in range(n_range[0], n_range[1] + 1):
        for m in range(m_range[0], m_range[1] + 1):
            try:
                check_theorem_range(n, m)
            except TheoremRangeError:
                continue
            pairs.append((n, m))
    return pairs


def _sweep_task(args) -> SweepRecord:
    n, m, cap, budget, seeds = args
    start = time.perf_counter()
    formula = closed_form_rn(n, m)
    dm = all_pairs_distances(prismatic_network(n, m))
    report = construct_best(n, m, seeds, dm=dm)
    exact, status = None, SKIPPED
    if (n + 1) * m <= cap:
        res = exact_rn(dm, budget=budget, seeds=seeds)
        exact, status = res.optimum, res.status
        assert not verify(dm, res.labeling)
    elapsed = round((time.perf_counter() - start) * 1000)
    return SweepRecord(n, m, formula.parity, formula.value, report.achieved_span,
                       report.paper_literal_violations, exact, status, elapsed)


def sweep(n_range: tuple[int, int], m_range: tuple[int, int], jobs: int = 1,
          exact_vertex_cap: int = 15, budget: float = 60.0,
          seeds: Iterable[int] = DEFAULT_SEEDS) -> list[SweepRecord]:
    """One record per valid (n, m) in the grid, in ascending (n, m) order."""
    pairs = sweep_grid(n_range, m_range)
    if not pairs:
        raise UsageError(f"sweep grid n={n_range} m={m_range} has no pair in theorem range")
    if jobs < 1:
        raise UsageError("jobs must be >= 1")
    seeds = tuple(seeds)
    tasks = [(n, m, exact_vertex_cap, budget, seeds) for n, m in pairs]
    if jobs == 1 or len(tasks) == 1:
        records = [_sweep_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_sweep_task, tasks))
    for r in records:
        log.info("n=%d m=%d formula=%d constructed=%d exact=%s (%s)", r.n, r.m,
                 r.formula_rn, r.constructed_span, r.exact_rn, r.exact_status)
    return sorted(records, key=lambda r: (r.n, r.m))


def sweep_csv(records: Sequence[SweepRecord], timing: bool = False) -> str:
    """Sweep table; elapsed_ms is left empty unless ``timing`` so that
    repeated runs are byte-identical."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.n, r.m, r.parity, r.formula_rn, r.constructed_span,
                    r.paper_literal_violations, "" if r.exact_rn is None else r.exact_rn,
                    r.exact_status, r.elapsed_ms if timing and r.elapsed_ms is not None else ""])
    return buf.getvalue()


def read_sweep_csv(text: str) -> list[SweepRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise UsageError(f"sweep CSV header must be {','.join(CSV_HEADER)}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        try:
            records.append(SweepRecord(
                int(row["n"]), int(row["m"]), row["parity"], int(row["formula_rn"]),
                int(row["constructed_span"]), int(row["paper_literal_violations"]),
                int(row["exact_rn"]) if row["exact_rn"] else None, row["exact_status"],
                int(row["elapsed_ms"]) if row["elapsed_ms"] else None))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"sweep CSV line {lineno}: {exc}") from exc
    return records
