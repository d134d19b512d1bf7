import json

import pytest

from critgraph.coloring import Coloring, is_proper
from critgraph.graph_core import InputError, build_custom_circulant
from critgraph.search import (
    candidates,
    evaluate,
    read_verdicts,
    recheck,
    run_search,
    verdict_log_path,
)


def test_candidates_are_6_regular():
    cands = list(candidates(11, 16))
    assert len(cands) == 130
    assert len({c for c in cands}) == 130
    for n, triple in cands:
        g = build_custom_circulant(n, triple)
        assert set(g.degrees()) == {6}


def test_candidate_count_for_11():
    # C(5, 3) triples from {1..5}
    assert len(list(candidates(11, 11))) == 10


def test_chi3_candidate_has_coloring_witness():
    # C_12(1, 3, 5) is bipartite, so it is rejected at the chromatic stage
    rec = evaluate(12, (1, 3, 5))
    assert rec["stage"] == "chi" and rec["witness"]["type"] == "coloring"
    g = build_custom_circulant(12, (1, 3, 5))
    col = Coloring.from_mapping(3, 12, {int(v): c for v, c in rec["witness"]["coloring"].items()})
    assert is_proper(g, col) == []
    assert recheck(rec)


def test_n11_run_complete_and_rechecked(tmp_path):
    frontier = tmp_path / "d4.frontier.json"
    summary = run_search(frontier, 11, 11)
    assert summary.complete and summary.evaluated == 10
    recs = read_verdicts(verdict_log_path(frontier))
    assert len(recs) == 10
    for rec in recs:
        assert rec["outcome"] == "rejected"
        assert recheck(rec)


def test_resume_never_reevaluates(tmp_path):
    frontier = tmp_path / "r.frontier.json"
    first = run_search(frontier, 11, 12, max_candidates=7)
    assert first.evaluated == 7 and not first.complete
    state = json.loads(frontier.read_text())
    assert state["cursor"] == 7
    second = run_search(frontier, 11, 12)
    assert second.complete
    ids = [rec["id"] for rec in read_verdicts(verdict_log_path(frontier))]
    assert sorted(ids) == list(range(first.total))
    assert len(ids) == len(set(ids))
    third = run_search(frontier, 11, 12)
    assert third.evaluated == 0


def test_frontier_params_must_match(tmp_path):
    frontier = tmp_path / "p.frontier.json"
    run_search(frontier, 11, 11, max_candidates=1)
    with pytest.raises(InputError):
        run_search(frontier, 11, 12)


def test_range_must_respect_order_bound(tmp_path):
    with pytest.raises(InputError):
        run_search(tmp_path / "x.frontier.json", 10, 12)


def test_recheck_rejects_forged_witness():
    rec = evaluate(12, (1, 3, 5))
    rec["witness"]["coloring"] = {str(v): 1 for v in range(12)}
    assert not recheck(rec)
