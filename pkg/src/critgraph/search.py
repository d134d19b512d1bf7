"""Resumable search for 6-regular circulant (4,r)-graphs.

Candidates are ``C_N(a, b, c)`` with ``1 <= a < b < c <= N/2`` and
``c != N/2`` (so the graph is 6-regular), enumerated by ``N`` and then
lexicographically.  Each candidate runs through a pipeline that stops at
the first failing stage, and every rejection records a witness that can be
re-checked independently:

1. necessary conditions (edge-connectivity, max degree, order),
2. chromatic number exactly 4,
3. vertex criticality,
4. no critical set of at most ``r`` edges.

A candidate that passes all four would be a (4,r)-graph.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterator, Optional

from .chromatic import brute_force_colorable, decide_colorable
from .coloring import Coloring, is_proper
from .criticality import edge_connectivity, prop51_filter, smallest_critical_set, worker_count
from .graph_core import Graph, InputError, build_custom_circulant, canonical_edge

log = logging.getLogger(__name__)


def candidates(n_min: int, n_max: int) -> Iterator[tuple[int, tuple[int, int, int]]]:
    for n in range(n_min, n_max + 1):
        top = n // 2
        for triple in combinations(range(1, top + 1), 3):
            if n % 2 == 0 and triple[2] == top:
                continue
            yield n, triple


def evaluate(n: int, triple: tuple[int, int, int], r: int = 1) -> dict:
    g = build_custom_circulant(n, triple)
    rec = {"N": n, "D": list(triple)}

    def reject(stage, witness):
        rec.update(stage=stage, outcome="rejected", witness=witness)
        return rec

    p = prop51_filter(g, r)
    if not p.passed:
        return reject("prop51", {"type": "prop51", "failures": [c.to_json() for c in p.failures()]})

    three = decide_colorable(g, 3)
    if three is not None:
        return reject("chi", {"type": "coloring", "palette": 3, "coloring": three.as_dict()})
    if decide_colorable(g, 4) is None:
        return reject("chi", {"type": "not-4-colorable"})

    # circulants are vertex-transitive, but every vertex is checked anyway
    for v in range(n):
        if decide_colorable(g, 3, vertices=[u for u in range(n) if u != v]) is None:
            return reject("vertex_critical", {"type": "non-critical-vertex", "vertex": v})

    small = smallest_critical_set(g, 4, r)
    if small.edges is not None:
        return reject(
            "critical_set",
            {
                "type": "critical-set",
                "edges": sorted(list(e) for e in small.edges),
                "coloring": small.witness.as_dict(),
            },
        )
    rec.update(stage="survivor", outcome="survivor", witness=None)
    return rec


def _job(args):
    idx, n, triple, r = args
    rec = evaluate(n, triple, r)
    rec["id"] = idx
    return rec


def recheck(rec: dict, r: int = 1) -> bool:
    """Re-verify a logged verdict with independent means (brute force and
    exhaustive cut enumeration)."""
    g = build_custom_circulant(rec["N"], rec["D"])
    w = rec["witness"]
    if rec["outcome"] == "survivor":
        return False
    kind = w["type"]
    if kind == "prop51":
        for cond in w["failures"]:
            if cond["name"] == "edge_connectivity":
                value = min_cut_brute_force(g) if g.edge_count <= 60 and g.order <= 20 else edge_connectivity(g)
            elif cond["name"] == "max_degree":
                value = max(len(g.neighbors(v)) for v in range(g.order))
            else:
                value = g.order
            if value != cond["value"]:
                return False
            ok = value >= cond["bound"] if cond["relation"] == ">=" else value <= cond["bound"]
            if ok:
                return False
        return True
    if kind == "coloring":
        col = Coloring.from_mapping(3, g.order, {int(v): c for v, c in w["coloring"].items()})
        return len(col.domain()) == g.order and not is_proper(g, col) and brute_force_colorable(g, 3)
    if kind == "not-4-colorable":
        return not brute_force_colorable(g, 4)
    if kind == "non-critical-vertex":
        v = w["vertex"]
        keep = [u for u in range(g.order) if u != v]
        sub = Graph(len(keep), [(keep.index(a), keep.index(b)) for a, b in g.edges if v not in (a, b)])
        return not brute_force_colorable(sub, 3)
    if kind == "critical-set":
        edges = [canonical_edge(*e) for e in w["edges"]]
        h = g.without_edges(edges)
        col = Coloring.from_mapping(3, g.order, {int(v): c for v, c in w["coloring"].items()})
        return (
            len(edges) <= r
            and not is_proper(h, col)
            and brute_force_colorable(h, 3)
            and not brute_force_colorable(g, 3)
        )
    return False


def min_cut_brute_force(g: Graph) -> int:
    """Edge connectivity by enumerating every bipartition (vertex 0 fixed on
    one side)."""
    n = g.order
    if n < 2:
        return 0
    edges = g.sorted_edges()
    best = len(edges)
    for mask in range(0, 1 << (n - 1)):
        side = (mask << 1) | 1
        if side == (1 << n) - 1:
            continue
        cut = sum(1 for u, v in edges if (side >> u & 1) != (side >> v & 1))
        best = min(best, cut)
    return best


@dataclass
class SearchSummary:
    evaluated: int
    total: int
    cursor: int
    survivors: list[dict]
    complete: bool


def run_search(
    frontier_path: os.PathLike,
    n_min: int,
    n_max: int,
    r: int = 1,
    max_candidates: Optional[int] = None,
    workers: Optional[int] = None,
) -> SearchSummary:
    """Advance the search recorded at ``frontier_path`` (created if absent).

    Verdicts are appended to ``<frontier>.verdicts.jsonl``; the frontier
    cursor only moves after the corresponding verdicts are on disk, and ids
    already in the log are skipped, so an interrupted run never evaluates a
    candidate twice.
    """
    if n_min < 5 * r + 6:
        raise InputError(f"N range must start at >= 5r + 6 = {5 * r + 6}")
    frontier_path = Path(frontier_path)
    log_path = verdict_log_path(frontier_path)
    params = {"n_min": n_min, "n_max": n_max, "r": r, "degree": 6}
    cursor = 0
    if frontier_path.exists():
        state = json.loads(frontier_path.read_text())
        if state["params"] != params:
            raise InputError(f"frontier was created for {state['params']}, not {params}")
        cursor = state["cursor"]
    done = {rec["id"] for rec in read_verdicts(log_path)}
    todo = [(i, n, t) for i, (n, t) in enumerate(candidates(n_min, n_max))]
    total = len(todo)
    todo = [job for job in todo if job[0] >= cursor and job[0] not in done]
    if max_candidates is not None:
        todo = todo[:max_candidates]
    workers = worker_count() if workers is None else workers
    evaluated = 0
    jobs = [(i, n, t, r) for i, n, t in todo]
    if workers > 1 and len(jobs) > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_job, jobs)
    else:
        pool = None
        results = map(_job, jobs)
    try:
        with open(log_path, "a") as fh:
            for rec in results:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
                fh.flush()
                evaluated += 1
                cursor = max(cursor, rec["id"] + 1)
                if rec["outcome"] == "survivor":
                    log.warning("SURVIVOR: C_%d%s passes every stage; this would be a 6-regular (4,%d)-graph", rec["N"], tuple(rec["D"]), r)
                _write_frontier(frontier_path, params, cursor, total)
    finally:
        if pool is not None:
            pool.shutdown()
    _write_frontier(frontier_path, params, cursor, total)
    recs = read_verdicts(log_path)
    survivors = [rec for rec in recs if rec["outcome"] == "survivor"]
    return SearchSummary(evaluated, total, cursor, survivors, len({r_["id"] for r_ in recs}) == total)


def verdict_log_path(frontier_path: os.PathLike) -> Path:
    p = Path(frontier_path)
    name = p.name[: -len(".frontier.json")] if p.name.endswith(".frontier.json") else p.stem
    return p.with_name(name + ".verdicts.jsonl")


def read_verdicts(path: os.PathLike) -> list[dict]:
    path = Path(path)
    if not path.exists():
        return []
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


def _write_frontier(path: Path, params: dict, cursor: int, total: int) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({"params": params, "cursor": cursor, "total": total}, indent=2) + "\n")
    os.replace(tmp, path)
