"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import solver_corpus, sparse_graphs, vertex_critical_corpus  # noqa: E402
from critgraph.chromatic import brute_force_colorable, chromatic_number, decide_colorable  # noqa: E402
from critgraph.coloring import check_periodic, detect_structure, is_proper, jensen_coloring, window_color_counts  # noqa: E402
from critgraph.composer import (  # noqa: E402
    GlueRecipe,
    build_kr,
    gadget_subgraph,
    glue,
    part_for,
    sparse_critical,
    swap_coloring,
    wheel,
)
from critgraph.criticality import (  # noqa: E402
    edge_connectivity,
    find_critical_set_greedy,
    is_vertex_critical,
    prop51_filter,
)
from critgraph.graph_core import CirculantSpec, Graph, build_circulant, build_custom_circulant, complete_graph  # noqa: E402
from critgraph.search import min_cut_brute_force, read_verdicts, recheck, run_search, verdict_log_path  # noqa: E402

GRID = [CirculantSpec(k, m, q) for k in range(5, 12) for m in range(1, 6) for q in (2, 4, 6, 8)]


def report(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} ({detail})", flush=True)


def criterion_1():
    start = time.monotonic()
    bad = [s.literal() for s in GRID if is_proper(build_circulant(s), jensen_coloring(s))]
    elapsed = time.monotonic() - start
    # 7 values of k, 5 of m, 4 of q: the grid as defined has 140 members
    ok = len(GRID) == 7 * 5 * 4 and not bad and elapsed < 60
    return ok, f"{len(GRID)} specs, {len(bad)} with violations, {elapsed:.1f}s"


def criterion_2():
    failures = []
    for s in GRID:
        col = jensen_coloring(s)
        n, N = s.period, s.order
        if not check_periodic(col, n, (1, N - 1)).is_periodic:
            failures.append((s.literal(), "periodic"))
        want = {c: n // (s.k - 1) for c in range(1, s.k)}
        if any(window_color_counts(col, a, n) != want for a in range(1, N - n + 1, n)):
            failures.append((s.literal(), "counts"))
        if s.k >= 6 and not detect_structure(col, s.m, (1, N - 1)).ok:
            failures.append((s.literal(), "structure"))
    return not failures, f"{len(GRID)} specs, failures: {failures[:5]}"


def criterion_3():
    start = time.monotonic()
    corpus = solver_corpus()
    mismatches = []
    checks = 0
    for name, g in corpus:
        for c in range(1, 7):
            checks += 1
            if (decide_colorable(g, c) is not None) != brute_force_colorable(g, c):
                mismatches.append((name, c))
    elapsed = time.monotonic() - start
    ok = not mismatches and elapsed < 600
    return ok, f"{len(corpus)} graphs, {checks} decisions, {len(mismatches)} mismatches, {elapsed:.1f}s"


def criterion_4():
    failures = []
    for k in (4, 5):
        for n in range(k + 3, k + 11):
            g = sparse_critical(k, n)
            rep = is_vertex_critical(g, k, edges=True)
            if not (g.order == n and g.edge_count < (k - 2) * n and rep.is_vertex_critical and rep.is_edge_critical):
                failures.append((k, n))
    return not failures, f"16 instances, failures: {failures}"


def k4_wheel_recipe() -> GlueRecipe:
    return GlueRecipe(complete_graph(4), [part_for(wheel(6), 4, 5) for _ in range(6)], 4)


def criterion_5():
    start = time.monotonic()
    recipe = k4_wheel_recipe()
    g = glue(recipe)
    chi = chromatic_number(g).chi
    rep = is_vertex_critical(g, 4)
    gadget_bad = 0
    for i in range(len(recipe.parts)):
        sub = gadget_subgraph(g, recipe, i)
        for a in range(1, 4):
            for b in range(1, 4):
                if a != b and is_proper(sub, swap_coloring(recipe, i, a, b)):
                    gadget_bad += 1
    elapsed = time.monotonic() - start
    ok = g.order == 34 and chi == 4 and rep.is_vertex_critical and not gadget_bad and elapsed < 300
    return ok, f"order {g.order}, chi {chi}, vertex-critical {rep.is_vertex_critical}, improper gadgets {gadget_bad}, {elapsed:.1f}s"


def criterion_6():
    graphs = vertex_critical_corpus() + [("K4+6xW6", glue(k4_wheel_recipe()), 4)]
    failures = []
    for name, g, k in graphs:
        if not is_vertex_critical(g, k).is_vertex_critical:
            failures.append((name, "not vertex-critical"))
            continue
        s = find_critical_set_greedy(g, k)
        h = g.without_edges(s)
        colorable = brute_force_colorable(h, k - 1) if g.order <= 21 else decide_colorable(h, k - 1) is not None
        if not (len(s) < (g.order - 1) / (k - 1) + 1 and colorable):
            failures.append((name, len(s)))
    return not failures, f"{len(graphs)} graphs, failures: {failures}"


def criterion_7():
    n = 24386880
    plan = build_kr(5, 1, n)
    M = plan.modulus
    qs = [plan.part_spec(i).q for i in range(plan.t)]
    checks = {
        "validator": plan.validate() == [],
        "n = Mx + h": n == M * plan.x + plan.h,
        "M <= h < 2M": M <= plan.h < 2 * M,
        "x_i >= 9": min(plan.parts) >= 9,
        "sum x_i = x": sum(plan.parts) == plan.x,
        "q_i = 0 mod 4": all(q % 4 == 0 for q in qs),
        "q_i >= 36": min(qs) >= 36,
        "m = 21 > 20": plan.m == 21 > 20,
        "total order": plan.h + sum(q * plan.period for q in qs) == n,
    }
    failed = [name for name, ok in checks.items() if not ok]
    return not failed, f"M={M}, x={plan.x}, h={plan.h}, t={plan.t}, failed: {failed}"


def criterion_8():
    failures = []
    for r in range(1, 6):
        n = 5 * r + 6
        g = complete_graph(n)
        rep = prop51_filter(g, r)
        if [c.bound for c in rep.conditions] != [3 * r + 3, n - (2 * r + 3), 5 * r + 6]:
            failures.append((r, "bounds"))
        # boundary: passing exactly at each bound, failing one step past it
        if not prop51_filter(g, r, connectivity=3 * r + 3).conditions[0].passed:
            failures.append((r, "lambda at bound"))
        if prop51_filter(g, r, connectivity=3 * r + 2).conditions[0].passed:
            failures.append((r, "lambda below bound"))
        star = Graph(n, [(0, v) for v in range(1, n - (2 * r + 3) + 1)])
        over = Graph(n, [(0, v) for v in range(1, n - (2 * r + 3) + 2)])
        if not prop51_filter(star, r, 0).conditions[1].passed or prop51_filter(over, r, 0).conditions[1].passed:
            failures.append((r, "max degree"))
        if prop51_filter(complete_graph(n - 1), r, 100).conditions[2].passed:
            failures.append((r, "order"))
    cut_graphs = sparse_graphs() + [wheel(n) for n in range(4, 7)]
    cut_bad = sum(edge_connectivity(g) != min_cut_brute_force(g) for g in cut_graphs if g.edge_count <= 12)
    ok = not failures and not cut_bad
    return ok, f"threshold failures {failures}, cut mismatches {cut_bad}/{len(cut_graphs)}"


def brute_confirms(rec: dict) -> bool:
    """Re-derive the colorability facts behind a verdict by exhaustive means."""
    g = build_custom_circulant(rec["N"], rec["D"])
    stage = rec["stage"]
    if stage == "prop51":
        return recheck(rec)
    three = brute_force_colorable(g, 3)
    if stage == "chi":
        return three if rec["witness"]["type"] == "coloring" else not brute_force_colorable(g, 4)
    return not three and brute_force_colorable(g, 4) and recheck(rec)


def criterion_9():
    start = time.monotonic()
    with tempfile.TemporaryDirectory() as tmp:
        frontier = Path(tmp) / "dirac4.frontier.json"
        summary = run_search(frontier, 11, 16, 1)
        recs = read_verdicts(verdict_log_path(frontier))
    rejected = [rec for rec in recs if rec["outcome"] == "rejected"]
    unverified = [rec["id"] for rec in rejected if not recheck(rec)]
    sample = random.Random(2024).sample(recs, 20)
    sample_bad = [rec["id"] for rec in sample if not brute_confirms(rec)]
    elapsed = time.monotonic() - start
    ok = summary.complete and len(recs) == summary.total and not unverified and not sample_bad and elapsed < 1800
    return ok, (
        f"{len(recs)}/{summary.total} candidates, {len(summary.survivors)} survivors, "
        f"{len(unverified)} unverifiable, {len(sample_bad)}/20 sample mismatches, {elapsed:.1f}s"
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10))
def test_acceptance(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print()
        report(number, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        report(i, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
