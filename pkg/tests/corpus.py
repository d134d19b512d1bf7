"""Small graphs shared by the test modules."""

from __future__ import annotations

import numpy as np

from critgraph.composer import hajos_join, sparse_critical, wheel
from critgraph.graph_core import CirculantSpec, Graph, build_circulant, complete_graph, cycle_graph


def small_specs(max_order: int = 21) -> list[CirculantSpec]:
    out = []
    for k in range(4, max_order + 1):
        for m in range(1, max_order):
            for q in range(2, max_order, 2):
                try:
                    spec = CirculantSpec(k, m, q)
                except ValueError:
                    continue
                if spec.order <= max_order:
                    out.append(spec)
    return out


def wheels(max_order: int = 10) -> list[Graph]:
    return [wheel(n) for n in range(4, max_order + 1)]


def hajos_corpus(max_order: int = 12) -> list[tuple[str, Graph]]:
    parts = {
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "C5": cycle_graph(5),
        "W6": wheel(6),
        "W8": wheel(8),
    }
    out = []
    names = sorted(parts)
    for i, a in enumerate(names):
        for b in names[i:]:
            g1, g2 = parts[a], parts[b]
            if g1.order + g2.order - 1 > max_order:
                continue
            e1, e2 = g1.sorted_edges()[0], g2.sorted_edges()[0]
            out.append((f"{a}+{b}", hajos_join(g1, e1, g2, e2)))
    return out


def random_graphs(count: int = 50, max_order: int = 12, seed: int = 20240) -> list[Graph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_order + 1))
        p = float(rng.uniform(0.2, 0.9))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        out.append(Graph(n, edges))
    return out


def solver_corpus() -> list[tuple[str, Graph]]:
    out = [(s.literal(), build_circulant(s)) for s in small_specs(21)]
    out += [(f"wheel:{g.order}", g) for g in wheels(10)]
    out += hajos_corpus(12)
    out += [(f"random-{i}", g) for i, g in enumerate(random_graphs())]
    return out


def vertex_critical_corpus() -> list[tuple[str, Graph, int]]:
    """Graphs known to be k-vertex-critical, with their k."""
    out = [(f"K{n}", complete_graph(n), n) for n in range(3, 7)]
    out += [(f"C{n}", cycle_graph(n), 3) for n in (5, 7, 9)]
    out += [(f"W{n}", wheel(n), 4) for n in (4, 6, 8, 10)]
    out += [(name, g, 4) for name, g in hajos_corpus(12) if name in {"K4+K4", "K4+W6", "W6+W6", "K4+W8"}]
    out += [(f"sparse({k},{n})", sparse_critical(k, n), k) for k in (4, 5) for n in range(k + 3, k + 7)]
    out.append(("circ:k=5,m=1,q=2", build_circulant(CirculantSpec(5, 1, 2)), 5))
    return out


def sparse_graphs(count: int = 60, max_edges: int = 12, seed: int = 515) -> list[Graph]:
    """Random graphs with at most ``max_edges`` edges, for exhaustive cut checks."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 10))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        size = int(rng.integers(0, min(max_edges, len(pairs)) + 1))
        pick = rng.choice(len(pairs), size=size, replace=False)
        out.append(Graph(n, [pairs[i] for i in pick]))
    return out
