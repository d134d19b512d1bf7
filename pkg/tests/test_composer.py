import random

import pytest

from critgraph.chromatic import chromatic_number
from critgraph.coloring import Coloring, is_proper
from critgraph.composer import (
    BuildPlan,
    GluedCirculantGraph,
    GluePart,
    GlueRecipe,
    add_universal_vertex,
    build_kr,
    gadget_subgraph,
    glue,
    hajos_join,
    kr_threshold,
    materialize,
    part_for,
    sparse_critical,
    swap_coloring,
    wheel,
)
from critgraph.criticality import is_vertex_critical
from critgraph.graph_core import (
    CirculantSpec,
    InputError,
    complete_graph,
    cycle_graph,
    cyclic_distance,
)


def test_wheel_examples():
    assert wheel(4) == complete_graph(4)
    w = wheel(6)
    assert w.order == 6 and w.edge_count == 10
    assert chromatic_number(w).chi == 4
    # hub over an even cycle
    assert chromatic_number(wheel(7)).chi == 3
    with pytest.raises(InputError):
        wheel(3)


def test_hajos_examples():
    k4 = complete_graph(4)
    j = hajos_join(k4, (0, 1), k4, (0, 1))
    assert (j.order, j.edge_count) == (7, 11)
    assert is_vertex_critical(j, 4, edges=True).is_edge_critical
    j2 = hajos_join(wheel(6), (0, 5), k4, (0, 1))
    assert (j2.order, j2.edge_count) == (9, 15)
    with pytest.raises(InputError):
        hajos_join(k4, (0, 1), cycle_graph(5), (0, 2))


def test_universal_vertex_examples():
    assert add_universal_vertex(complete_graph(3)) == complete_graph(4)
    assert add_universal_vertex(cycle_graph(5)) == wheel(6)
    g = add_universal_vertex(wheel(6))
    assert g.order == 7 and chromatic_number(g).chi == 5


def test_sparse_critical_examples():
    assert sparse_critical(4, 8) == wheel(8) and wheel(8).edge_count == 14
    g = sparse_critical(4, 9)
    assert (g.order, g.edge_count) == (9, 15)
    g = sparse_critical(5, 10)
    assert (g.order, g.edge_count) == (10, 24)
    assert chromatic_number(g).chi == 5
    with pytest.raises(InputError):
        sparse_critical(5, 7)


def test_sparse_critical_edge_bound_grid():
    for k in range(4, 8):
        for n in range(k + 3, k + 16):
            g = sparse_critical(k, n)
            assert g.order == n
            assert g.edge_count < (k - 2) * n


def k4_recipe(part_graph, vertex):
    return GlueRecipe(complete_graph(4), [part_for(part_graph, 4, vertex) for _ in range(6)], 4)


def test_glue_orders():
    assert glue(k4_recipe(complete_graph(4), 0)).order == 4 + 6 * 3
    assert glue(k4_recipe(wheel(6), 5)).order == 34


def test_glue_rejects_bad_recipes():
    recipe = k4_recipe(complete_graph(4), 0)
    recipe.parts = recipe.parts[:5]
    with pytest.raises(InputError):
        glue(recipe)
    bad = GluePart(complete_graph(4), 0, Coloring(3, [0, 1, 1, 2]))
    with pytest.raises(InputError):
        glue(GlueRecipe(complete_graph(4), [bad] * 6, 4))
    with pytest.raises(InputError):
        glue(GlueRecipe(complete_graph(4), recipe.parts[:1] * 6, 4, host_edges=[(0, 1)] * 6))


def test_glued_graph_is_4_vertex_critical():
    g = glue(k4_recipe(wheel(6), 5))
    rep = is_vertex_critical(g, 4)
    assert rep.is_k_chromatic and rep.is_vertex_critical


@pytest.mark.parametrize("part_graph,vertex", [(wheel(6), 5), (complete_graph(4), 0), (wheel(8), 0)])
def test_swap_colorings_proper(part_graph, vertex):
    recipe = k4_recipe(part_graph, vertex)
    g = glue(recipe)
    for i in range(len(recipe.parts)):
        sub = gadget_subgraph(g, recipe, i)
        for a in range(1, 4):
            for b in range(1, 4):
                if a == b:
                    continue
                col = swap_coloring(recipe, i, a, b)
                u, w = recipe.host_edges[i]
                assert col[u] == a and col[w] == b
                assert is_proper(sub, col) == []


def test_kr_plan_numbers():
    n = 24386880
    assert kr_threshold(5, 1) == n
    plan = build_kr(5, 1, n)
    assert (plan.modulus, plan.x, plan.h, plan.m) == (672, 36289, 672, 21)
    assert plan.validate() == []
    assert plan.t == sparse_critical(5, 672).edge_count == 2010
    assert plan.parts[:-1] == [9] * 2009 and plan.parts[-1] == 18208
    for i in (0, plan.t - 1):
        assert plan.part_spec(i).q == 8 * plan.parts[i]
    assert plan.total_order() == n
    assert BuildPlan.from_json(plan.to_json()) == plan


def test_kr_below_threshold():
    with pytest.raises(InputError, match="threshold"):
        build_kr(5, 1, kr_threshold(5, 1) - 1)


def test_kr_plan_even_k():
    n = kr_threshold(6, 1) + 12345
    plan = build_kr(6, 1, n)
    assert plan.validate() == []
    assert plan.part_spec(0).q == 4 * plan.parts[0]


def test_plan_validator_catches_tampering():
    plan = build_kr(5, 1, 24386880)
    plan.parts[-1] += 1
    assert "sum x_i != x" in plan.validate()


def test_large_plan_stays_implicit():
    plan = build_kr(5, 1, 24386880)
    g = materialize(plan)
    assert isinstance(g, GluedCirculantGraph)
    rng = random.Random(0)
    # adjacency inside one part agrees with direct distance membership
    for _ in range(1000):
        i = rng.randrange(plan.t)
        spec = plan.part_spec(i)
        a, b = rng.randrange(1, spec.order), rng.randrange(1, spec.order)
        base = g.offsets[i]
        expected = a != b and cyclic_distance(a, b, spec.order) in spec.distances
        assert g.adjacent(base + a - 1, base + b - 1) == expected


def test_oracle_matches_explicit_glue():
    specs = [CirculantSpec(5, 1, 2)] * 10
    oracle = GluedCirculantGraph(complete_graph(5), specs)
    explicit = glue(oracle.recipe())
    assert oracle.order == explicit.order == 5 + 10 * 8
    assert oracle.edge_count == explicit.edge_count
    assert oracle.materialize() == explicit
    for v in range(oracle.order):
        assert oracle.neighbors(v) == explicit.neighbors(v)


def test_oracle_matches_explicit_glue_mixed_parts():
    host = sparse_critical(5, 8)
    specs = [CirculantSpec(5, 1 + i % 2, 2 + 2 * (i % 3)) for i in range(host.edge_count)]
    oracle = GluedCirculantGraph(host, specs)
    assert oracle.materialize() == glue(oracle.recipe())


def test_materialize_recipe():
    recipe = k4_recipe(wheel(6), 5)
    assert materialize(recipe).order == 34
