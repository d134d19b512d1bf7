"""Exact k-colorability and chromatic number.

:func:`decide_colorable` is a DSATUR-ordered backtracking search with the
usual color-symmetry break (a vertex may open at most one new color).
:func:`brute_force_colorable` is an independent oracle that never
searches: it either enumerates every assignment or counts covers by
independent sets over all vertex subsets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .coloring import UNASSIGNED, Coloring, is_proper
from .graph_core import CirculantSpec, Graph, InputError, build_circulant

DEFAULT_NODE_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """A search ran out of its node or time budget; no verdict was reached."""

    def __init__(self, message: str, nodes: int = 0, partial=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: float = 0.0


class _Search:
    def __init__(self, masks, verts, palette, node_budget, deadline):
        self.masks = masks
        self.verts = verts
        self.palette = palette
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.color = {v: UNASSIGNED for v in verts}
        # counts[v][c]: colored neighbours of v with color c
        self.counts = {v: [0] * (palette + 1) for v in verts}
        self.uncolored = sum(1 << v for v in verts)
        self.nbrs = {v: [u for u in verts if masks[v] >> u & 1] for v in verts}

    def pick(self) -> int:
        best, best_key = -1, None
        rest = self.uncolored
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            cnt = self.counts[v]
            sat = sum(1 for c in range(1, self.palette + 1) if cnt[c])
            key = (sat, (self.masks[v] & self.uncolored).bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def assign(self, v: int, c: int, delta: int) -> None:
        for u in self.nbrs[v]:
            self.counts[u][c] += delta

    def run(self, used: int) -> bool:
        if not self.uncolored:
            return True
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceeded(f"node budget {self.node_budget} exhausted", self.nodes)
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted", self.nodes)
        v = self.pick()
        cnt = self.counts[v]
        self.uncolored ^= 1 << v
        for c in range(1, min(used + 1, self.palette) + 1):
            if cnt[c]:
                continue
            self.color[v] = c
            self.assign(v, c, 1)
            if self.run(max(used, c)):
                return True
            self.assign(v, c, -1)
        self.color[v] = UNASSIGNED
        self.uncolored |= 1 << v
        return False


def _explicit(g) -> Graph:
    return g if isinstance(g, Graph) else g.materialize()


def decide_colorable(
    g,
    palette: int,
    vertices: Optional[Iterable[int]] = None,
    node_budget: Optional[int] = DEFAULT_NODE_BUDGET,
    time_budget: Optional[float] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[Coloring]:
    """Return a proper coloring with at most ``palette`` colors, or ``None``
    when none exists.

    If ``vertices`` is given only the induced subgraph on them is colored
    and the other vertices stay unassigned in the witness.  Running out of
    budget raises :class:`BudgetExceeded` rather than answering.
    """
    if palette < 1:
        raise InputError("palette must be >= 1")
    g = _explicit(g)
    verts = sorted(set(range(g.order) if vertices is None else vertices))
    stats = stats if stats is not None else SearchStats()
    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None
    search = _Search(g.masks(), verts, palette, node_budget, deadline)
    try:
        found = search.run(0)
    finally:
        stats.nodes += search.nodes
        stats.elapsed_ms += (time.monotonic() - start) * 1000
    if not found:
        return None
    colors = [UNASSIGNED] * g.order
    for v, c in search.color.items():
        colors[v] = c
    return Coloring(palette, colors)


# -- independent oracle ------------------------------------------------------

ENUMERATION_LIMIT = 1 << 21
SUBSET_LIMIT = 24


def _enumerate_colorable(g: Graph, palette: int) -> bool:
    n = g.order
    edges = np.array(g.sorted_edges(), dtype=np.int64).reshape(-1, 2)
    total = palette**n
    chunk = 1 << 16
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        digits = np.empty((codes.size, n), dtype=np.int64)
        for v in range(n):
            digits[:, v] = codes % palette
            codes = codes // palette
        ok = np.ones(digits.shape[0], dtype=bool)
        for u, v in edges:
            ok &= digits[:, u] != digits[:, v]
        if ok.any():
            return True
    return False


def independent_set_counts(g: Graph) -> np.ndarray:
    """``out[S]`` = number of independent subsets (empty included) of the
    vertex set encoded by bitmask ``S``."""
    n = g.order
    masks = g.masks()
    counts = np.ones(1 << n, dtype=np.int64)
    for b in range(n):
        lower = np.arange(1 << b, dtype=np.int64)
        keep = ~masks[b] & ((1 << b) - 1)
        counts[1 << b : 1 << (b + 1)] = counts[: 1 << b] + counts[lower & keep]
    return counts


def count_set_covers(g: Graph, palette: int, counts: Optional[np.ndarray] = None) -> int:
    """Number of ordered ``palette``-tuples of independent sets covering V.

    Positive exactly when ``g`` is ``palette``-colorable.  Computed by
    inclusion-exclusion over all vertex subsets, with exact integers.
    """
    n = g.order
    if counts is None:
        counts = independent_set_counts(g)
    sizes = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        sizes[1 << b : 1 << (b + 1)] = sizes[: 1 << b] + 1
    sign = np.where((n - sizes) % 2 == 0, 1.0, -1.0)
    weights = np.bincount(counts, weights=sign)
    total = 0
    for value in np.flatnonzero(weights):
        total += int(weights[value]) * int(value) ** palette
    return total


def brute_force_colorable(g, palette: int, method: str = "auto") -> bool:
    """Exhaustive colorability check without search or pruning.

    ``method="enumerate"`` tests all ``palette**N`` assignments;
    ``method="cover"`` counts independent-set covers over all ``2**N``
    subsets.  ``auto`` enumerates when that is small enough and otherwise
    counts covers.
    """
    if palette < 1:
        raise InputError("palette must be >= 1")
    g = _explicit(g)
    n = g.order
    if n == 0:
        return True
    if method == "auto":
        method = "enumerate" if palette**n <= ENUMERATION_LIMIT else "cover"
    if method == "enumerate":
        if palette**n > ENUMERATION_LIMIT * 64:
            raise BudgetExceeded(f"{palette}^{n} assignments exceed the enumeration budget")
        return _enumerate_colorable(g, palette)
    if method == "cover":
        if n > SUBSET_LIMIT:
            raise BudgetExceeded(f"2^{n} subsets exceed the enumeration budget")
        return count_set_covers(g, palette) > 0
    raise InputError(f"unknown method {method!r}")


# -- cliques and chromatic number -------------------------------------------


def paper_clique(spec: CirculantSpec, i: int = 1) -> list[int]:
    """A (k-1)-clique inside the window ``[i, i + n_{k,m} - 1]`` (odd k).

    The vertices are those whose index is congruent to ``i`` or ``i + 1``
    modulo ``2m``, taking the first occurrence of each class in the window.
    """
    if spec.k % 2 == 0:
        raise InputError("clique lower bound is only available for odd k")
    n = spec.period
    if not 1 <= i <= (spec.q - 1) * n + 1:
        raise InputError(f"window start {i} outside [1, {(spec.q - 1) * n + 1}]")
    two_m = 2 * spec.m
    clique = [a for a in range(i, i + n) if (a - i) % two_m in (0, 1)]
    g = build_circulant(spec)
    assert len(clique) == spec.k - 1, clique
    for x in range(len(clique)):
        for y in range(x + 1, len(clique)):
            assert g.adjacent(clique[x], clique[y]), (clique[x], clique[y])
    return clique


def greedy_clique(g) -> list[int]:
    g = _explicit(g)
    best: list[int] = []
    order = sorted(range(g.order), key=lambda v: (-g.degree(v), v))
    for seed in order:
        clique = [seed]
        cand = set(g.neighbors(seed))
        while cand:
            nxt = max(cand, key=lambda u: (len(g.neighbors(u) & cand), -u))
            clique.append(nxt)
            cand &= g.neighbors(nxt)
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def is_clique(g, vertices) -> bool:
    vs = list(vertices)
    return all(g.adjacent(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


@dataclass
class ChiResult:
    chi: int
    witness: Coloring
    lower_bound_certificate: Union[list[int], str]
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        cert = self.lower_bound_certificate
        return {
            "chi": self.chi,
            "certificate": {"type": "clique", "vertices": cert} if isinstance(cert, list) else {"type": cert},
            "witness": self.witness.as_dict(),
            "stats": {"nodes": self.stats.nodes, "elapsed_ms": round(self.stats.elapsed_ms, 3)},
        }


def _clique_bound(g) -> list[int]:
    spec = getattr(g, "source", None)
    if isinstance(spec, CirculantSpec) and spec.k % 2 == 1 and g.order == spec.order:
        return paper_clique(spec, 1)
    return greedy_clique(g)


def chromatic_number(g, node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> ChiResult:
    g = _explicit(g)
    stats = SearchStats()
    if g.order == 0:
        return ChiResult(0, Coloring(1, []), [], stats)
    clique = _clique_bound(g)
    palette = max(1, len(clique))
    while True:
        witness = decide_colorable(g, palette, node_budget=node_budget, stats=stats)
        if witness is not None:
            break
        palette += 1
    cert: Union[list[int], str] = clique if len(clique) == palette else "search-exhausted"
    assert not is_proper(g, witness)
    return ChiResult(palette, witness, cert, stats)
