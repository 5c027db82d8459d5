"""Exit criteria. Each test records one PASS/FAIL line, shown in the
terminal summary under "acceptance criteria"."""
import csv
import io
import itertools
import random
import time

import pytest

from starprism.construction import closed_form_rn, paper_literal_labeling
from starprism.graphs import (
    all_pairs_distances, build_cycle, build_star, prismatic_network, strong_product,
)
from starprism.labeling import Violation, greedy_from_ordering, verify
from starprism.plot import formula_series, series_csv, strictly_increasing_in_n
from starprism.solver import PROVEN, brute_force_rn, exact_rn, sweep, sweep_csv

from conftest import ACCEPTANCE_LINES, cycle_distance, star_distance


def record(tag: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{tag}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_ac1_distance_law():
    start = time.perf_counter()
    bad = []
    pairs = 0
    for n in range(2, 6):
        for m in range(4, 12):
            g = prismatic_network(n, m)
            dm = all_pairs_distances(g)
            for u, v in itertools.combinations(range(g.vertex_count), 2):
                ku, kv = g.vertices[u], g.vertices[v]
                want = max(star_distance(ku.star_index, kv.star_index),
                           cycle_distance(ku.cycle_index, kv.cycle_index, m))
                pairs += 1
                if dm[u, v] != want:
                    bad.append((n, m, u, v))
            if dm.diameter != max(2, m // 2):
                bad.append((n, m, "diameter"))
    elapsed = time.perf_counter() - start
    record("AC1 distance law", not bad and elapsed < 10,
           f"{pairs} pairs over 32 graphs, {len(bad)} mismatches, {elapsed:.2f}s (< 10s)")


def test_ac2_formula_reproduction():
    a, b = closed_form_rn(4, 6).value, closed_form_rn(4, 5).value
    record("AC2 formula values", (a, b) == (39, 58), f"rn(4,6)={a} (39), rn(4,5)={b} (58)")


ORACLE_SET = (
    [build_star(n) for n in range(2, 9)]
    + [build_cycle(m) for m in range(3, 10)]
    + [strong_product(build_star(2), build_cycle(3))]
    + [build_star(1), strong_product(build_star(1), build_cycle(3)),
       strong_product(build_star(1), build_cycle(4)),
       strong_product(build_star(2), build_star(2)),
       strong_product(build_cycle(3), build_cycle(3))]
)


def test_ac3_oracle_cross_validation():
    start = time.perf_counter()
    mismatches = []
    for g in ORACLE_SET:
        assert g.vertex_count <= 9
        dm = all_pairs_distances(g)
        bf = brute_force_rn(dm)
        bb = exact_rn(dm, budget=60)
        if not bb.proven or bb.optimum != bf.optimum:
            mismatches.append((g.kind, g.n, g.m, bf.optimum, bb.optimum, bb.status))
    elapsed = time.perf_counter() - start
    record("AC3 oracle cross-validation",
           len(ORACLE_SET) >= 20 and not mismatches and elapsed < 60,
           f"{len(ORACLE_SET)} instances, {len(mismatches)} mismatches, {elapsed:.2f}s (< 60s)")


def test_ac4_greedy_validity():
    rng = random.Random(20260)
    bad = 0
    for n, m in [(2, 4), (2, 5)]:
        dm = all_pairs_distances(prismatic_network(n, m))
        for _ in range(100):
            order = list(range(dm.size))
            rng.shuffle(order)
            bad += bool(verify(dm, greedy_from_ordering(dm, order)))
    record("AC4 greedy validity", bad == 0, f"200 random orderings, {bad} with violations")


def test_ac5_paper_literal_characterization():
    g = prismatic_network(2, 4)
    dm = all_pairs_distances(g)
    phi = paper_literal_labeling(2, 4)
    u, v = sorted((g.vertex_id(0, 1), g.vertex_id(1, 0)))
    pinned = Violation(u, v, distance=1, required_gap=2, actual_gap=0) in verify(dm, phi)
    top, formula = max(phi.labels), closed_form_rn(2, 4).value
    record("AC5 paper-literal labeling", pinned and top == formula,
           f"pinned violation (v0,u2)-(v1,u1) present={pinned}; "
           f"max label {top} vs closed form {formula}")


@pytest.mark.parametrize("n,m", [(2, 4), (2, 5)])
def test_ac6_desk_scale_optimum(n, m):
    dm = all_pairs_distances(prismatic_network(n, m))
    res = exact_rn(dm, budget=300)
    row = next(r for r in sweep((n, n), (m, m), exact_vertex_cap=15, budget=300))
    ok = (res.status == PROVEN and res.elapsed < 300 and row.exact_status == PROVEN
          and row.exact_rn == res.optimum and row.exact_rn <= row.constructed_span
          and not verify(dm, res.labeling))
    record(f"AC6 exact S_{n} x C_{m}", ok,
           f"status={res.status} rn={res.optimum} in {res.elapsed:.2f}s; "
           f"constructed={row.constructed_span}; formula={row.formula_rn}; "
           f"delta formula-exact={row.delta}")


def test_ac7_determinism():
    a = sweep_csv(sweep((2, 4), (4, 7), jobs=1, seeds=(0, 1, 2, 3)))
    b = sweep_csv(sweep((2, 4), (4, 7), jobs=4, seeds=(0, 1, 2, 3)))
    c = sweep_csv(sweep((2, 4), (4, 7), jobs=2, seeds=(0, 1, 2, 3)))
    record("AC7 sweep determinism", a.encode() == b.encode() == c.encode(),
           f"jobs 1/4/2 -> {len(a.encode())} bytes each, identical={a == b == c}")


def test_ac8_figure_trend():
    records = sweep((2, 4), (4, 7), exact_vertex_cap=0)
    series = formula_series(records)
    tidy = list(csv.DictReader(io.StringIO(series_csv(records))))
    from_csv = {}
    for row in tidy:
        from_csv.setdefault((row["parity"], int(row["m"])), []).append(
            (int(row["n"]), int(row["formula_rn"])))
    increasing = strictly_increasing_in_n(series) and all(
        all(a[1] < b[1] for a, b in zip(pts, pts[1:])) for pts in from_csv.values())
    record("AC8 figure trend", increasing and len(from_csv) == 4,
           f"{len(from_csv)} plotted series (m=4..7), strictly increasing in n={increasing}")
