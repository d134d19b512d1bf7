"""Graphs, circulant specifications and DIMACS I/O.

Vertices are integers ``0..N-1``.  Two backings exist:

* :class:`Graph` stores an explicit edge set.
* :class:`CirculantGraph` answers adjacency from a :class:`DistanceSet`
  without materialising edges, which keeps the very large circulants used
  by the composition driver cheap to hold.
"""

from __future__ import annotations

import hashlib
import re
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

DEFAULT_EDGE_BUDGET = 10**7

Edge = tuple[int, int]


class InputError(ValueError):
    """Invalid parameters or arguments."""


class MaterializationRefused(Exception):
    """Explicit construction would exceed the edge budget.

    The implicit form is attached so callers can keep working with it.
    """

    def __init__(self, implicit, edges: int, budget: int):
        super().__init__(f"graph has {edges} edges, budget is {budget}")
        self.implicit = implicit
        self.edges = edges
        self.budget = budget


class DimacsParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def canonical_edge(u: int, v: int) -> Edge:
    if u == v:
        raise InputError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def cyclic_distance(a: int, b: int, n: int) -> int:
    if not (0 <= a < n and 0 <= b < n):
        raise InputError(f"indices {a}, {b} out of range for N={n}")
    d = abs(b - a)
    return min(d, n - d)


class _GraphOps:
    """Queries shared by explicit and implicit graphs."""

    order: int

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.order)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def vertices(self) -> range:
        return range(self.order)


class Graph(_GraphOps):
    """Finite simple undirected graph with an explicit edge set."""

    is_implicit = False

    def __init__(self, order: int, edges: Iterable[Edge] = (), source=None):
        if order < 0:
            raise InputError("order must be non-negative")
        self.order = order
        adj: list[set[int]] = [set() for _ in range(order)]
        canon = set()
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise InputError(f"edge ({u}, {v}) out of range for order {order}")
            e = canonical_edge(u, v)
            canon.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._edges = frozenset(canon)
        self._adj = [frozenset(s) for s in adj]
        self._masks: Optional[list[int]] = None
        # what the graph was built from, e.g. a CirculantSpec; informational only
        self.source = source

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def iter_edges(self) -> Iterator[Edge]:
        return iter(self.sorted_edges())

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def masks(self) -> list[int]:
        """Neighbourhoods as integer bitmasks (bit ``u`` set iff adjacent)."""
        if self._masks is None:
            self._masks = [sum(1 << u for u in nb) for nb in self._adj]
        return self._masks

    def has_edge(self, e: Edge) -> bool:
        u, v = e
        return 0 <= u < self.order and 0 <= v < self.order and v in self._adj[u]

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {canonical_edge(*e) for e in removed}
        missing = drop - self._edges
        if missing:
            raise InputError(f"edges not in graph: {sorted(missing)}")
        return Graph(self.order, self._edges - drop)

    def materialize(self, budget: int = DEFAULT_EDGE_BUDGET) -> "Graph":
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.order, self._edges))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edge_count})"


@dataclass(frozen=True)
class DistanceSet:
    """Disjoint sorted inclusive intervals of positive distances.

    ``components`` keeps the constituent parts (for G_{k,m,q}:
    the odd distances, the shifted lower blocks and the shifted upper
    blocks) so they can be inspected separately.
    """

    intervals: tuple[tuple[int, int], ...]
    components: tuple[tuple[tuple[int, int], ...], ...] = ()
    _starts: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))
        object.__setattr__(self, "_starts", tuple(lo for lo, _ in self.intervals))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "DistanceSet":
        return cls(tuple((d, d) for d in values))

    @classmethod
    def from_components(cls, *parts: Iterable[tuple[int, int]]) -> "DistanceSet":
        comps = tuple(_normalize(p) for p in parts)
        return cls(tuple(iv for c in comps for iv in c), comps)

    def __contains__(self, d: int) -> bool:
        idx = bisect_right(self._starts, d) - 1
        return idx >= 0 and d <= self.intervals[idx][1]

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def max(self) -> int:
        return self.intervals[-1][1] if self.intervals else 0

    def component_values(self) -> list[set[int]]:
        return [{d for lo, hi in c for d in range(lo, hi + 1)} for c in self.components]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{lo}" if lo == hi else f"{lo}..{hi}" for lo, hi in self.intervals) + "}"


def _normalize(intervals: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    ivs = sorted((int(lo), int(hi)) for lo, hi in intervals if lo <= hi)
    merged: list[list[int]] = []
    for lo, hi in ivs:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def period_length(k: int, m: int) -> int:
    if k < 4 or m < 1:
        raise InputError(f"need k >= 4 and m >= 1, got k={k}, m={m}")
    return (k - 1) * m if k % 2 else 2 * (k - 1) * m


def distance_set(k: int, m: int, q: int) -> DistanceSet:
    n = period_length(k, m)
    if q < 2 or q % 2:
        raise InputError(f"q must be even and >= 2, got q={q}")
    d1 = [(d, d) for d in range(1, 2 * m, 2)]
    if k % 2:
        base2 = (2 * m, (k - 3) * m + 1)
        base3 = None
    else:
        base2 = (2 * m, (k - 4) * m + 2)
        base3 = ((k + 2) * m - 1, (2 * k - 4) * m + 1)
    shifts = [s * n for s in range(q // 2)]
    d2 = [(base2[0] + s, base2[1] + s) for s in shifts]
    d3 = [(base3[0] + s, base3[1] + s) for s in shifts] if base3 else []
    return DistanceSet.from_components(d1, d2, d3)


@dataclass(frozen=True)
class CirculantSpec:
    """Parameters ``(k, m, q)`` of the circulant family."""

    k: int
    m: int
    q: int

    def __post_init__(self):
        period_length(self.k, self.m)
        if self.q < 2 or self.q % 2:
            raise InputError(f"q must be even and >= 2, got q={self.q}")

    @property
    def period(self) -> int:
        return period_length(self.k, self.m)

    @property
    def order(self) -> int:
        return self.q * self.period + 1

    @property
    def distances(self) -> DistanceSet:
        return distance_set(self.k, self.m, self.q)

    def literal(self) -> str:
        return f"circ:k={self.k},m={self.m},q={self.q}"


class CirculantGraph(_GraphOps):
    """Implicit circulant ``C_N(D)``; adjacency is a distance lookup."""

    is_implicit = True

    def __init__(self, order: int, distances: DistanceSet, source=None):
        if order < 1:
            raise InputError("order must be >= 1")
        if distances.intervals and (distances.intervals[0][0] < 1 or distances.max() > order // 2):
            raise InputError(f"distances must lie in [1, {order // 2}]")
        self.order = order
        self.distances = distances
        self.source = source

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and cyclic_distance(u, v, self.order) in self.distances

    def neighbors(self, v: int) -> frozenset[int]:
        n = self.order
        return frozenset(x for d in self.distances for x in ((v + d) % n, (v - d) % n))

    def degree(self, v: int) -> int:
        size = len(self.distances)
        if self.order % 2 == 0 and self.order // 2 in self.distances:
            return 2 * size - 1
        return 2 * size

    @property
    def edge_count(self) -> int:
        return self.order * self.degree(0) // 2

    def iter_edges(self) -> Iterator[Edge]:
        n = self.order
        half = n // 2 if n % 2 == 0 else None
        for d in self.distances:
            for i in range(n):
                if d == half and i >= half:
                    continue
                yield canonical_edge(i, (i + d) % n)

    def materialize(self, budget: int = DEFAULT_EDGE_BUDGET) -> Graph:
        if self.edge_count > budget:
            raise MaterializationRefused(self, self.edge_count, budget)
        return Graph(self.order, self.iter_edges(), source=self.source)

    def __repr__(self) -> str:
        return f"CirculantGraph(order={self.order}, D={self.distances})"


def circulant_oracle(spec: CirculantSpec) -> CirculantGraph:
    return CirculantGraph(spec.order, spec.distances, source=spec)


def build_circulant(spec: CirculantSpec, budget: int = DEFAULT_EDGE_BUDGET) -> Graph:
    return circulant_oracle(spec).materialize(budget)


def build_custom_circulant(n: int, distances, budget: int = DEFAULT_EDGE_BUDGET) -> Graph:
    if not isinstance(distances, DistanceSet):
        distances = DistanceSet.from_values(distances)
    for lo, hi in distances.intervals:
        if lo < 1 or hi > n // 2:
            raise InputError(f"distance interval [{lo}, {hi}] outside [1, {n // 2}]")
    return CirculantGraph(n, distances).materialize(budget)


@dataclass(frozen=True)
class HypothesisCheck:
    k_ge_5: bool
    r_ge_1: bool
    q_ge_24r_plus_12: bool
    q_mult_of_4: bool
    m_gt_18r_plus_2: bool

    @property
    def overall(self) -> bool:
        return all(
            (self.k_ge_5, self.r_ge_1, self.q_ge_24r_plus_12, self.q_mult_of_4, self.m_gt_18r_plus_2)
        )


def theorem_hypotheses(k: int, m: int, q: int, r: int) -> HypothesisCheck:
    """Evaluate the sufficient conditions for ``G_{k,m,q}`` to be a (k,r)-graph."""
    return HypothesisCheck(
        k_ge_5=k >= 5,
        r_ge_1=r >= 1,
        q_ge_24r_plus_12=q >= 24 * r + 12,
        q_mult_of_4=q % 4 == 0,
        m_gt_18r_plus_2=m > 18 * r + 2,
    )


# -- DIMACS ---------------------------------------------------------------


def to_dimacs(g, budget: int = DEFAULT_EDGE_BUDGET) -> str:
    g = g.materialize(budget)
    edges = g.sorted_edges()
    lines = [f"p edge {g.order} {len(edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    order = None
    declared = 0
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if order is not None:
                raise DimacsParseError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsParseError(lineno, f"malformed header {line!r}")
            try:
                order, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(lineno, f"malformed header {line!r}") from None
            if order < 0 or declared < 0:
                raise DimacsParseError(lineno, "negative counts in header")
        elif parts[0] == "e":
            if order is None:
                raise DimacsParseError(lineno, "edge before header")
            if len(parts) != 3:
                raise DimacsParseError(lineno, f"malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsParseError(lineno, f"malformed edge {line!r}") from None
            if not (1 <= u <= order and 1 <= v <= order):
                raise DimacsParseError(lineno, f"endpoint out of range 1..{order} (indices are 1-based)")
            if u == v:
                raise DimacsParseError(lineno, "self-loop")
            e = canonical_edge(u - 1, v - 1)
            if e in edges:
                raise DimacsParseError(lineno, f"duplicate edge {u} {v}")
            edges.add(e)
        else:
            raise DimacsParseError(lineno, f"unknown line type {parts[0]!r}")
    if order is None:
        raise DimacsParseError(0, "missing header")
    if len(edges) != declared:
        raise DimacsParseError(0, f"header declares {declared} edges, found {len(edges)}")
    return Graph(order, edges)


def fingerprint(g) -> dict:
    g = g.materialize()
    degs = ",".join(map(str, sorted(g.degrees())))
    return {
        "order": g.order,
        "degree_hash": hashlib.sha256(degs.encode()).hexdigest()[:16],
        "edge_hash": hashlib.sha256(to_dimacs(g).encode()).hexdigest()[:16],
    }


_LITERAL = re.compile(r"^(\w+):(.*)$")


def _kv(body: str) -> dict[str, str]:
    out = {}
    for item in filter(None, body.split(",")):
        if "=" not in item:
            raise InputError(f"expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def parse_spec_literal(text: str) -> CirculantSpec:
    m = _LITERAL.match(text.strip())
    if not m or m.group(1) != "circ":
        raise InputError(f"not a circulant spec literal: {text!r}")
    kv = _kv(m.group(2))
    try:
        return CirculantSpec(int(kv["k"]), int(kv["m"]), int(kv["q"]))
    except KeyError as exc:
        raise InputError(f"spec literal missing {exc.args[0]!r}") from None


def parse_graph_arg(text: str, budget: int = DEFAULT_EDGE_BUDGET):
    """Resolve a graph argument.

    Accepted forms: ``circ:k=5,m=2,q=4``, ``circ:N=11,D=1+2+4``,
    ``wheel:6``, ``complete:4``, ``cycle:5`` or a path to a DIMACS file.
    """
    m = _LITERAL.match(text.strip())
    if m and m.group(1) in ("circ", "wheel", "complete", "cycle"):
        kind, body = m.groups()
        if kind == "circ":
            kv = _kv(body)
            if "N" in kv:
                ds = [int(x) for x in kv.get("D", "").split("+") if x]
                return build_custom_circulant(int(kv["N"]), ds, budget)
            return build_circulant(parse_spec_literal(text), budget)
        n = int(body)
        if kind == "complete":
            return complete_graph(n)
        if kind == "cycle":
            return cycle_graph(n)
        from .composer import wheel

        return wheel(n)
    with open(text) as fh:
        return from_dimacs(fh.read())


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))
