"""Vertex/edge criticality, critical edge sets and (k,r) verdicts.

Everything here is exact: answers come from :func:`decide_colorable` and
carry a witness coloring whenever something is claimed colorable.
Implicit graphs are refused instead of being approximated.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional

import networkx as nx

from .chromatic import BudgetExceeded, SearchStats, decide_colorable
from .coloring import Coloring, is_proper
from .graph_core import Edge, Graph, InputError, canonical_edge

WORKERS_ENV = "CRITGRAPH_WORKERS"

EdgeSet = frozenset  # of canonical (lo, hi) edges


class PreconditionError(InputError):
    pass


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _require_explicit(g) -> Graph:
    if getattr(g, "is_implicit", False):
        raise InputError("criticality checks need an explicit graph; materialize it first")
    return g


def _map(fn, items, workers: Optional[int]):
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass
class Verdict:
    critical: bool
    witness: Optional[Coloring] = None


@dataclass
class CriticalityReport:
    k: int
    is_k_chromatic: bool
    vertex_verdicts: dict[int, Verdict] = field(default_factory=dict)
    edge_verdicts: dict[Edge, Verdict] = field(default_factory=dict)
    chi_witness: Optional[Coloring] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def is_vertex_critical(self) -> bool:
        return self.is_k_chromatic and all(v.critical for v in self.vertex_verdicts.values())

    @property
    def is_edge_critical(self) -> Optional[bool]:
        if not self.edge_verdicts:
            return None
        return self.is_k_chromatic and all(v.critical for v in self.edge_verdicts.values())

    def non_critical_vertices(self) -> list[int]:
        return sorted(v for v, vd in self.vertex_verdicts.items() if not vd.critical)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "is_k_chromatic": self.is_k_chromatic,
            "is_vertex_critical": self.is_vertex_critical,
            "is_edge_critical": self.is_edge_critical,
            "non_critical_vertices": self.non_critical_vertices(),
            "non_critical_edges": sorted(list(e) for e, vd in self.edge_verdicts.items() if not vd.critical),
        }


def _vertex_job(args):
    g, k, v = args
    return v, decide_colorable(g, k - 1, vertices=[u for u in range(g.order) if u != v])


def _edge_job(args):
    g, k, e = args
    return e, decide_colorable(g.without_edges([e]), k - 1)


def chromatic_equals(g: Graph, k: int, stats: Optional[SearchStats] = None) -> tuple[bool, Optional[Coloring]]:
    """``(chi(g) == k, a k-coloring if one exists)``."""
    if k < 1:
        return g.order == 0, None
    witness = decide_colorable(g, k, stats=stats)
    if witness is None:
        return False, None
    if k == 1:
        return True, witness
    return decide_colorable(g, k - 1, stats=stats) is None, witness


def is_vertex_critical(g, k: int, edges: bool = False, workers: Optional[int] = None) -> CriticalityReport:
    """Check that ``chi(g) == k`` and that every vertex is critical.

    With ``edges=True`` every edge is classified as well.  A budget failure
    propagates as :class:`BudgetExceeded` with the partial report attached.
    """
    g = _require_explicit(g)
    report = CriticalityReport(k, False)
    try:
        report.is_k_chromatic, report.chi_witness = chromatic_equals(g, k, report.stats)
        for v, col in _map(_vertex_job, [(g, k, v) for v in range(g.order)], workers):
            report.vertex_verdicts[v] = Verdict(col is not None, col)
        if edges:
            for e, col in _map(_edge_job, [(g, k, e) for e in g.sorted_edges()], workers):
                report.edge_verdicts[e] = Verdict(col is not None, col)
    except BudgetExceeded as exc:
        exc.partial = report
        raise
    return report


def critical_edges(g, k: int, workers: Optional[int] = None) -> set[Edge]:
    g = _require_explicit(g)
    ok, _ = chromatic_equals(g, k)
    if not ok:
        raise PreconditionError(f"chromatic number is not {k}")
    results = _map(_edge_job, [(g, k, e) for e in g.sorted_edges()], workers)
    return {e for e, col in results if col is not None}


# -- subset enumeration ------------------------------------------------------


def colex_unrank(rank: int, size: int) -> tuple[int, ...]:
    """The ``rank``-th ``size``-subset of the naturals in colexicographic order."""
    out = []
    for i in range(size, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        out.append(c)
        rank -= comb(c, i)
    return tuple(reversed(out))


def colex_subsets(n: int, size: int, start: int = 0) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(rank, subset)`` for all ``size``-subsets of ``range(n)`` in
    colex order, beginning at ``start``."""
    total = comb(n, size)
    if start >= total:
        return
    cur = list(colex_unrank(start, size))
    rank = start
    while True:
        yield rank, tuple(cur)
        rank += 1
        if rank >= total:
            return
        # successor in colex order
        i = 0
        while i < size - 1 and cur[i] + 1 == cur[i + 1]:
            i += 1
        cur[i] += 1
        for j in range(i):
            cur[j] = j


@dataclass
class KrVerdict:
    k: int
    r: int
    mode: str
    outcome: str  # "confirmed" | "refuted" | "inconclusive"
    witness: Optional[frozenset] = None
    witness_coloring: Optional[Coloring] = None
    checked_sets: int = 0
    cursor: Optional[tuple[int, int]] = None  # (size, colex rank) to resume from
    seed: Optional[int] = None
    trials: Optional[int] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "r": self.r,
            "mode": self.mode,
            "outcome": self.outcome,
            "checked_sets": self.checked_sets,
        }
        if self.witness is not None:
            out["witness"] = sorted(list(e) for e in self.witness)
            out["witness_coloring"] = self.witness_coloring.as_dict()
        if self.cursor is not None:
            out["cursor"] = list(self.cursor)
        if self.mode == "sampled":
            out["seed"], out["trials"] = self.seed, self.trials
        return out


def _critical_witness(g: Graph, k: int, subset, stats) -> Optional[Coloring]:
    return decide_colorable(g.without_edges(subset), k - 1, stats=stats)


def verify_kr(
    g,
    k: int,
    r: int,
    mode: str = "exhaustive",
    *,
    seed: int = 0,
    trials: int = 1000,
    max_checks: Optional[int] = None,
    resume_from: Optional[tuple[int, int]] = None,
    check_chi: bool = True,
) -> KrVerdict:
    """Decide whether some set of at most ``r`` edges is critical.

    Only the edge-set half of the (k,r) property is checked here; vertex
    criticality is :func:`is_vertex_critical`'s job.

    ``exhaustive`` walks all subsets by increasing size in colex order and
    can be resumed from a ``(size, rank)`` cursor.  ``sampled`` never
    confirms.  ``greedy-refutation`` first tries :func:`find_critical_set_greedy`
    and falls back to the exhaustive walk.
    """
    g = _require_explicit(g)
    stats = SearchStats()
    if check_chi:
        ok, _ = chromatic_equals(g, k, stats)
        if not ok:
            raise PreconditionError(f"chromatic number is not {k}")
    edges = g.sorted_edges()
    verdict = KrVerdict(k, r, mode, "inconclusive", stats=stats)

    def refute(subset, col):
        verdict.outcome = "refuted"
        verdict.witness = frozenset(subset)
        verdict.witness_coloring = col
        return verdict

    if mode == "sampled":
        verdict.seed, verdict.trials = seed, trials
        rng = random.Random(seed)
        for _ in range(trials):
            size = rng.randint(1, min(r, len(edges)))
            subset = rng.sample(edges, size)
            verdict.checked_sets += 1
            col = _critical_witness(g, k, subset, stats)
            if col is not None:
                return refute(subset, col)
        return verdict

    if mode == "greedy-refutation":
        greedy = find_critical_set_greedy(g, k)
        verdict.checked_sets += 1
        if len(greedy) <= r:
            col = _critical_witness(g, k, greedy, stats)
            assert col is not None
            return refute(greedy, col)
    elif mode != "exhaustive":
        raise InputError(f"unknown mode {mode!r}")

    size0, rank0 = resume_from or (1, 0)
    for size in range(size0, min(r, len(edges)) + 1):
        start = rank0 if size == size0 else 0
        for rank, idx in colex_subsets(len(edges), size, start):
            if max_checks is not None and verdict.checked_sets >= max_checks:
                verdict.cursor = (size, rank)
                return verdict
            subset = [edges[i] for i in idx]
            verdict.checked_sets += 1
            col = _critical_witness(g, k, subset, stats)
            if col is not None:
                return refute(subset, col)
    verdict.outcome = "confirmed"
    return verdict


@dataclass
class SmallestCriticalSet:
    edges: Optional[frozenset]  # None: no critical set of size <= r_max
    witness: Optional[Coloring]
    checked_sets: int
    r_max: int


def smallest_critical_set(g, k: int, r_max: int, max_checks: Optional[int] = None) -> SmallestCriticalSet:
    """Minimum-cardinality critical edge set of size at most ``r_max``.

    Sizes are tried in increasing order, so the first hit is minimum and
    none of its supersets is ever examined.
    """
    v = verify_kr(g, k, r_max, "exhaustive", max_checks=max_checks)
    if v.outcome == "inconclusive":
        raise BudgetExceeded(f"stopped after {v.checked_sets} subsets at cursor {v.cursor}", partial=v)
    return SmallestCriticalSet(v.witness, v.witness_coloring, v.checked_sets, r_max)


def find_critical_set_greedy(g, k: int) -> frozenset:
    """Critical edge set from a (k-1)-coloring of a vertex-deleted subgraph.

    For each vertex ``v`` and each color class of a (k-1)-coloring of
    ``G - v``, the edges from ``v`` into that class form a critical set
    (give ``v`` that color).  The smallest one over all ``v`` and colors is
    returned; ties go to the lower color, then the lower vertex.
    """
    g = _require_explicit(g)
    best_key, best = None, None
    for v in range(g.order):
        col = decide_colorable(g, k - 1, vertices=[u for u in range(g.order) if u != v])
        if col is None:
            raise PreconditionError(f"G - {v} is not {k - 1}-colorable")
        for c in range(1, k):
            hits = sorted(u for u in g.neighbors(v) if col[u] == c)
            key = (len(hits), c, v)
            if best_key is None or key < best_key:
                best_key, best = key, frozenset(canonical_edge(v, u) for u in hits)
    return best


# -- connectivity and necessary conditions -------------------------------------


def edge_connectivity(g) -> int:
    """Global minimum edge cut, as the minimum over ``t`` of the max-flow
    value between vertex 0 and ``t`` (unit capacities)."""
    g = _require_explicit(g)
    if g.order < 2:
        return 0
    h = nx.DiGraph()
    h.add_nodes_from(range(g.order))
    for u, v in g.iter_edges():
        h.add_edge(u, v, capacity=1)
        h.add_edge(v, u, capacity=1)
    if not nx.is_weakly_connected(h):
        return 0
    return min(
        nx.maximum_flow_value(h, 0, t, flow_func=nx.algorithms.flow.edmonds_karp) for t in range(1, g.order)
    )


@dataclass
class Condition:
    name: str
    value: int
    bound: int
    relation: str  # ">=" or "<="
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "relation": self.relation, "bound": self.bound, "passed": self.passed}


@dataclass
class Prop51Report:
    r: int
    conditions: list[Condition]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.passed]

    def to_json(self) -> dict:
        return {"r": self.r, "passed": self.passed, "conditions": [c.to_json() for c in self.conditions]}


def prop51_filter(g, r: int, connectivity: Optional[int] = None) -> Prop51Report:
    """Necessary conditions for a (4,r)-graph.  Passing proves nothing."""
    g = _require_explicit(g)
    n = g.order
    lam = edge_connectivity(g) if connectivity is None else connectivity
    maxdeg = g.max_degree()
    conds = [
        Condition("edge_connectivity", lam, 3 * r + 3, ">=", lam >= 3 * r + 3),
        Condition("max_degree", maxdeg, n - (2 * r + 3), "<=", maxdeg <= n - (2 * r + 3)),
        Condition("order", n, 5 * r + 6, ">=", n >= 5 * r + 6),
    ]
    return Prop51Report(r, conds)


def verify_removal(g: Graph, k: int, removed) -> Optional[Coloring]:
    """A (k-1)-coloring of ``g - removed`` checked for propriety, or None."""
    h = g.without_edges(removed)
    col = decide_colorable(h, k - 1)
    if col is not None:
        assert not is_proper(h, col)
    return col
