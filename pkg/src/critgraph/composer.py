"""Constructions producing new critical graphs from old ones.

* :func:`wheel`, :func:`hajos_join`, :func:`add_universal_vertex` and
  :func:`sparse_critical` build sparse k-critical graphs of any order.
* :func:`glue` attaches a copy of ``G_i - v_i`` to every edge of a
  k-critical host ``H``.
* :func:`build_kr` does the order arithmetic that makes the gluing hit an
  arbitrary (large) target order, and :func:`materialize` turns a plan
  into a graph or an adjacency oracle.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional, Sequence, Union

from .chromatic import decide_colorable
from .coloring import Coloring, is_proper, jensen_coloring
from .graph_core import (
    DEFAULT_EDGE_BUDGET,
    CirculantSpec,
    Edge,
    Graph,
    InputError,
    MaterializationRefused,
    _GraphOps,
    build_circulant,
    canonical_edge,
    complete_graph,
    cyclic_distance,
    period_length,
)


def wheel(n: int) -> Graph:
    """Cycle on ``0..n-2`` plus hub ``n-1`` joined to all of it."""
    if n < 4:
        raise InputError(f"wheel needs order >= 4, got {n}")
    rim = n - 1
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return Graph(n, edges)


def hajos_join(g1: Graph, e1: Edge, g2: Graph, e2: Edge) -> Graph:
    """Delete ``e1 = (u1, v1)`` and ``e2 = (u2, v2)``, identify ``u2`` with
    ``u1`` and join ``v1`` to ``v2``.

    Vertices of ``g1`` keep their labels; those of ``g2`` other than ``u2``
    follow in increasing order.
    """
    u1, v1 = e1
    u2, v2 = e2
    if not g1.has_edge(e1):
        raise InputError(f"{e1} is not an edge of the first graph")
    if not g2.has_edge(e2):
        raise InputError(f"{e2} is not an edge of the second graph")
    relabel = {}
    nxt = g1.order
    for x in range(g2.order):
        if x == u2:
            relabel[x] = u1
        else:
            relabel[x] = nxt
            nxt += 1
    drop1, drop2 = canonical_edge(u1, v1), canonical_edge(u2, v2)
    edges = [e for e in g1.edges if e != drop1]
    edges += [(relabel[a], relabel[b]) for a, b in g2.edges if (a, b) != drop2]
    edges.append((v1, relabel[v2]))
    return Graph(nxt, edges)


def add_universal_vertex(g: Graph) -> Graph:
    n = g.order
    return Graph(n + 1, list(g.edges) + [(v, n) for v in range(n)])


def sparse_critical(k: int, n: int) -> Graph:
    """A k-critical graph of order ``n`` with fewer than ``(k-2)n`` edges."""
    if k < 4:
        raise InputError("k must be >= 4")
    if k == 4 and n % 2 == 0 and n >= 4:
        return wheel(n)
    if n < k + 3:
        raise InputError(f"need n >= k + 3 = {k + 3}, got n={n}")
    if k == 4:
        w = wheel(n - 3)
        # rim edge (0, hub) of the wheel, any edge of K4
        return hajos_join(w, (0, n - 4), complete_graph(4), (0, 1))
    g = sparse_critical(4, n - (k - 4))
    for _ in range(k - 4):
        g = add_universal_vertex(g)
    return g


# -- gluing ------------------------------------------------------------------


@dataclass
class GluePart:
    graph: Graph
    vertex: int
    coloring: Coloring  # proper (k-1)-coloring of graph - vertex

    def split(self) -> tuple[list[int], list[int]]:
        """Neighbours of ``vertex`` colored 1, and the rest."""
        nb = sorted(self.graph.neighbors(self.vertex))
        a = [u for u in nb if self.coloring[u] == 1]
        b = [u for u in nb if self.coloring[u] != 1]
        return a, b


@dataclass
class GlueRecipe:
    host: Graph
    parts: list[GluePart]
    k: int
    host_edges: Optional[list[Edge]] = None  # enumeration e_1..e_t; sorted by default

    def __post_init__(self):
        if self.host_edges is None:
            self.host_edges = self.host.sorted_edges()

    def validate(self) -> None:
        t = len(self.host_edges)
        if sorted(map(lambda e: canonical_edge(*e), self.host_edges)) != self.host.sorted_edges():
            raise InputError("host edge enumeration must list every host edge once")
        if len(self.parts) != t:
            raise InputError(f"recipe has {len(self.parts)} parts but the host has {t} edges")
        for i, part in enumerate(self.parts):
            g, v, c = part.graph, part.vertex, part.coloring
            if not 0 <= v < g.order:
                raise InputError(f"part {i}: vertex {v} out of range")
            if c.order != g.order or c.palette > self.k - 1:
                raise InputError(f"part {i}: coloring must use at most {self.k - 1} colors on {g.order} vertices")
            if sorted(c.domain()) != [u for u in range(g.order) if u != v]:
                raise InputError(f"part {i}: coloring must cover exactly G - v")
            if is_proper(g, c):
                raise InputError(f"part {i}: coloring is not proper on G - v")
            a, b = part.split()
            if set(a) | set(b) != set(g.neighbors(v)) or set(a) & set(b):
                raise InputError(f"part {i}: A/B is not a partition of N(v)")

    def offsets(self) -> list[int]:
        out, pos = [], self.host.order
        for p in self.parts:
            out.append(pos)
            pos += p.graph.order - 1
        return out

    @property
    def order(self) -> int:
        return self.host.order + sum(p.graph.order - 1 for p in self.parts)

    def relabel(self, i: int) -> dict[int, int]:
        """Map from part ``i`` vertices (except ``v_i``) to glued labels."""
        part, base = self.parts[i], self.offsets()[i]
        others = [u for u in range(part.graph.order) if u != part.vertex]
        return {u: base + j for j, u in enumerate(others)}


def glue(recipe: GlueRecipe) -> Graph:
    recipe.validate()
    edges: list[Edge] = []
    for i, part in enumerate(recipe.parts):
        lab = recipe.relabel(i)
        v = part.vertex
        edges += [(lab[a], lab[b]) for a, b in part.graph.edges if v not in (a, b)]
        u_i, w_i = recipe.host_edges[i]
        a, b = part.split()
        edges += [(u_i, lab[x]) for x in a]
        edges += [(w_i, lab[x]) for x in b]
    return Graph(recipe.order, edges)


def swap_coloring(recipe: GlueRecipe, i: int, a: int, b: int) -> Coloring:
    """Coloring of ``G_i' = G[V(G_i) - v_i + {u_i, w_i}]`` (glued labels,
    other vertices unassigned) giving ``u_i`` color ``a`` and ``w_i`` color
    ``b``: extend ``c_i`` by 2 at ``u_i`` and 1 at ``w_i``, then permute
    colors so that 2 -> a and 1 -> b."""
    if a == b:
        raise InputError("a and b must differ")
    palette = recipe.k - 1
    perm = {2: a, 1: b}
    rest = iter(c for c in range(1, palette + 1) if c not in (a, b))
    for c in range(3, palette + 1):
        perm[c] = next(rest)
    part = recipe.parts[i]
    lab = recipe.relabel(i)
    colors = [0] * recipe.order
    for x, y in lab.items():
        colors[y] = perm[part.coloring[x]]
    u_i, w_i = recipe.host_edges[i]
    colors[u_i], colors[w_i] = a, b
    return Coloring(palette, colors)


def gadget_subgraph(glued: Graph, recipe: GlueRecipe, i: int) -> Graph:
    """Induced subgraph of the glued graph on ``V(G_i) - v_i + {u_i, w_i}``,
    kept on the glued vertex labels."""
    keep = set(recipe.relabel(i).values()) | set(recipe.host_edges[i])
    return Graph(glued.order, [e for e in glued.edges if e[0] in keep and e[1] in keep])


def part_for(g: Graph, k: int, vertex: int = 0) -> GluePart:
    """Glue part with a pinned coloring: the periodic pattern for circulants
    from the G_{k,m,q} family, the exact solver otherwise."""
    spec = g.source
    if isinstance(spec, CirculantSpec) and spec.k == k and vertex == 0 and k >= 5:
        col = jensen_coloring(spec)
    else:
        col = decide_colorable(g, k - 1, vertices=[u for u in range(g.order) if u != vertex])
        if col is None:
            raise InputError(f"G - {vertex} is not {k - 1}-colorable")
    return GluePart(g, vertex, Coloring(k - 1, col.colors))


# -- order arithmetic for arbitrary targets -----------------------------------


def kr_threshold(k: int, r: int) -> int:
    a = 18 * r + 3
    return 8 * (k - 1) * a * (16 * (k - 2) * (k - 1) * a * (6 * r + 3) + 2)


@dataclass
class BuildPlan:
    k: int
    r: int
    n: int
    modulus: int
    x: int
    h: int
    m: int
    t: int
    parts: list[int]  # x_1..x_t
    host: str = "sparse_critical"

    @property
    def period(self) -> int:
        return period_length(self.k, self.m)

    def part_order(self, i: int) -> int:
        return self.modulus * self.parts[i] + 1

    def part_spec(self, i: int) -> CirculantSpec:
        return CirculantSpec(self.k, self.m, (self.part_order(i) - 1) // self.period)

    def total_order(self) -> int:
        return self.h + sum(self.part_order(i) - 1 for i in range(self.t))

    def validate(self) -> list[str]:
        """Return the violated identities (empty when the plan is sound)."""
        k, r = self.k, self.r
        bad = []
        if self.modulus != 8 * (k - 1) * (18 * r + 3):
            bad.append("modulus != 8(k-1)(18r+3)")
        if self.n != self.modulus * self.x + self.h:
            bad.append("n != M*x + h")
        if not self.modulus <= self.h < 2 * self.modulus:
            bad.append("h outside [M, 2M)")
        if self.m != 18 * r + 3 or not self.m > 18 * r + 2:
            bad.append("m != 18r + 3")
        if len(self.parts) != self.t:
            bad.append("part count != t")
        if any(xi < 6 * r + 3 for xi in self.parts):
            bad.append("some x_i < 6r + 3")
        if sum(self.parts) != self.x:
            bad.append("sum x_i != x")
        for i in range(self.t):
            q, rem = divmod(self.part_order(i) - 1, self.period)
            if rem or q % 4 or q < 24 * r + 12:
                bad.append(f"part {i}: q_i = {(self.part_order(i) - 1) / self.period} invalid")
                break
        if self.total_order() != self.n:
            bad.append("h + sum(n_i - 1) != n")
        return bad

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=None, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BuildPlan":
        return cls(**json.loads(text))


def build_kr(k: int, r: int, n: int) -> BuildPlan:
    if k < 5 or r < 1:
        raise InputError(f"need k >= 5 and r >= 1, got k={k}, r={r}")
    threshold = kr_threshold(k, r)
    if n < threshold:
        raise InputError(f"n = {n} is below the threshold 8(k-1)(18r+3)(16(k-2)(k-1)(18r+3)(6r+3)+2) = {threshold}")
    modulus = 8 * (k - 1) * (18 * r + 3)
    x, h = divmod(n, modulus)
    x, h = x - 1, h + modulus
    if h < k + 3:
        raise InputError(f"host order h = {h} < k + 3")
    host = sparse_critical(k, h)
    t = host.edge_count
    low = 6 * r + 3
    if x < low * t:
        raise InputError(f"x = {x} < (6r+3)t = {low * t}")
    parts = [low] * (t - 1) + [x - low * (t - 1)]
    plan = BuildPlan(k, r, n, modulus, x, h, 18 * r + 3, t, parts)
    bad = plan.validate()
    assert not bad, bad
    return plan


# -- materialization -----------------------------------------------------------


class GluedCirculantGraph(_GraphOps):
    """Adjacency oracle for a host glued with circulant parts ``G_{k,m,q_i} - v_0``.

    The host occupies labels ``0..h-1``; part ``i`` vertex ``v_j`` (j >= 1)
    sits at ``offset_i + j - 1``.  Parts are colored by the periodic pattern.
    """

    is_implicit = True

    def __init__(self, host: Graph, specs: Sequence[CirculantSpec], host_edges: Optional[list[Edge]] = None):
        self.host = host
        self.specs = list(specs)
        self.host_edges = host_edges or host.sorted_edges()
        if len(self.specs) != len(self.host_edges):
            raise InputError("one part per host edge required")
        self.k = self.specs[0].k
        self.offsets = []
        pos = host.order
        for s in self.specs:
            self.offsets.append(pos)
            pos += s.order - 1
        self.order = pos
        # host vertex -> list of (part index, side) it is glued to
        self._seams: dict[int, list[tuple[int, int]]] = {}
        for i, (u, w) in enumerate(self.host_edges):
            self._seams.setdefault(u, []).append((i, 1))
            self._seams.setdefault(w, []).append((i, 2))
        self._tables = {}

    def _table(self, spec: CirculantSpec) -> list[int]:
        if spec not in self._tables:
            from .coloring import JensenPattern

            self._tables[spec] = JensenPattern(spec.k, spec.m).residue_table()
        return self._tables[spec]

    def locate(self, x: int) -> tuple[int, int]:
        """``(-1, x)`` for host vertices, else ``(part, circulant index)``."""
        if not 0 <= x < self.order:
            raise InputError(f"vertex {x} out of range")
        if x < self.host.order:
            return -1, x
        lo, hi = 0, len(self.offsets) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.offsets[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        return lo, x - self.offsets[lo] + 1

    def _seam(self, h: int, part: int, j: int) -> bool:
        spec = self.specs[part]
        if cyclic_distance(0, j, spec.order) not in spec.distances:
            return False
        first = self._table(spec)[j % spec.period] == 1
        for i, side in self._seams.get(h, ()):
            if i == part:
                return first if side == 1 else not first
        return False

    def adjacent(self, x: int, y: int) -> bool:
        if x == y:
            return False
        px, jx = self.locate(x)
        py, jy = self.locate(y)
        if px == -1 and py == -1:
            return False
        if px == -1:
            return self._seam(jx, py, jy)
        if py == -1:
            return self._seam(jy, px, jx)
        if px != py:
            return False
        spec = self.specs[px]
        return cyclic_distance(jx, jy, spec.order) in spec.distances

    def neighbors(self, x: int) -> frozenset[int]:
        p, j = self.locate(x)
        out = set()
        if p == -1:
            for i, _side in self._seams.get(j, ()):
                spec, base = self.specs[i], self.offsets[i]
                for d in spec.distances:
                    for y in (d, spec.order - d):
                        if self._seam(j, i, y):
                            out.add(base + y - 1)
            return frozenset(out)
        spec, base = self.specs[p], self.offsets[p]
        for d in spec.distances:
            for y in ((j + d) % spec.order, (j - d) % spec.order):
                if y:
                    out.add(base + y - 1)
        if cyclic_distance(0, j, spec.order) in spec.distances:
            u, w = self.host_edges[p]
            out.add(u if self._table(spec)[j % spec.period] == 1 else w)
        return frozenset(out)

    @property
    def edge_count(self) -> int:
        # every part keeps N_i |D_i| edges: those lost with v_0 reappear as seams
        return sum(s.order * len(s.distances) for s in self.specs)

    def iter_edges(self):
        for x in range(self.order):
            for y in sorted(self.neighbors(x)):
                if x < y:
                    yield (x, y)

    def materialize(self, budget: int = DEFAULT_EDGE_BUDGET) -> Graph:
        if self.edge_count > budget:
            raise MaterializationRefused(self, self.edge_count, budget)
        return Graph(self.order, self.iter_edges())

    def recipe(self) -> GlueRecipe:
        parts = []
        for spec in self.specs:
            g = build_circulant(spec)
            parts.append(GluePart(g, 0, jensen_coloring(spec)))
        return GlueRecipe(self.host, parts, self.k, list(self.host_edges))


def plan_oracle(plan: BuildPlan) -> GluedCirculantGraph:
    host = sparse_critical(plan.k, plan.h)
    return GluedCirculantGraph(host, [plan.part_spec(i) for i in range(plan.t)])


def materialize(obj: Union[BuildPlan, GlueRecipe, GluedCirculantGraph], budget: int = DEFAULT_EDGE_BUDGET):
    """Explicit graph when within ``budget`` edges, else the implicit oracle."""
    if isinstance(obj, GlueRecipe):
        estimate = sum(p.graph.edge_count for p in obj.parts)
        if estimate <= budget:
            return glue(obj)
        raise InputError("recipes with explicit parts cannot be kept implicit")
    oracle = plan_oracle(obj) if isinstance(obj, BuildPlan) else obj
    if oracle.edge_count <= budget:
        return oracle.materialize(budget)
    return oracle
