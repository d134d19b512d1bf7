"""Command-line front end.

Exit codes: 0 confirmed / true / colorable, 1 impossible (``decide``),
2 refuted / false, 3 inconclusive or out of budget, 4 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .chromatic import BudgetExceeded, SearchStats, chromatic_number, decide_colorable
from .coloring import (
    check_periodic,
    detect_structure,
    is_proper,
    jensen_coloring,
    window_color_counts,
)
from .composer import (
    GluePart,
    GlueRecipe,
    build_kr,
    glue,
    materialize,
    sparse_critical,
)
from .coloring import Coloring
from .criticality import (
    find_critical_set_greedy,
    is_vertex_critical,
    smallest_critical_set,
    verify_kr,
)
from .graph_core import (
    DEFAULT_EDGE_BUDGET,
    CirculantSpec,
    Graph,
    InputError,
    MaterializationRefused,
    build_circulant,
    fingerprint,
    parse_graph_arg,
    parse_spec_literal,
    to_dimacs,
)
from .search import read_verdicts, run_search, verdict_log_path

EXIT_OK, EXIT_IMPOSSIBLE, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3, 4

log = logging.getLogger("critgraph")


# -- reports and run records -------------------------------------------------


def make_report(graph_id, command, params, outcome, witness=None, stats=None, resumed_from=None) -> dict:
    stats = stats or SearchStats()
    report = {
        "graph_id": graph_id,
        "command": command,
        "params": params,
        "outcome": outcome,
    }
    if witness is not None:
        report["witness"] = witness
    report["stats"] = {"nodes": stats.nodes, "elapsed_ms": round(stats.elapsed_ms, 3)}
    if resumed_from is not None:
        report["resumed_from"] = resumed_from
    return report


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def param_hash(command: str, params: dict) -> str:
    blob = json.dumps({"command": command, "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class RunCache:
    """Stores run records keyed by parameter hash and graph fingerprint."""

    def __init__(self, root: Optional[str]):
        self.root = Path(root) if root else None

    def _path(self, command, params, fp) -> Optional[Path]:
        if self.root is None:
            return None
        return self.root / f"{param_hash(command, params)}-{fp['edge_hash']}.run.json"

    def get(self, command, params, fp) -> Optional[str]:
        path = self._path(command, params, fp)
        if path is None or not path.exists():
            return None
        return json.loads(path.read_text())["outcome_json"]

    def put(self, command, params, fp, outcome_json: str, argv, started: float) -> None:
        path = self._path(command, params, fp)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        record = {
            "command_line": argv,
            "param_hash": param_hash(command, params),
            "graph_fingerprint": fp,
            "outcome_json": outcome_json,
            "started": datetime.fromtimestamp(started, timezone.utc).isoformat(),
            "finished": datetime.now(timezone.utc).isoformat(),
            "resume_cursor": None,
        }
        path.write_text(json.dumps(record, indent=2) + "\n")


def _emit(args, text: str) -> None:
    sys.stdout.write(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)


def _cached_run(args, command: str, graph, params: dict, compute):
    """Run ``compute() -> (report, exit_code)`` unless a cached outcome exists."""
    cache = RunCache(args.cache_dir)
    fp = fingerprint(graph) if cache.root else None
    if fp is not None:
        hit = cache.get(command, params, fp)
        if hit is not None:
            _emit(args, hit)
            return json.loads(hit).get("exit_code", EXIT_OK)
    started = time.time()
    report, code = compute()
    report["exit_code"] = code
    text = dumps(report)
    if fp is not None:
        cache.put(command, params, fp, text, sys.argv, started)
    _emit(args, text)
    return code


def _graph(args):
    return parse_graph_arg(args.graph, args.budget)


# -- commands -----------------------------------------------------------------


def cmd_build(args) -> int:
    out_dir = Path(args.out_dir)
    if args.what == "circulant":
        spec = CirculantSpec(args.k, args.m, args.q)
        g = build_circulant(spec, args.budget)
        stem = f"circ_k{spec.k}_m{spec.m}_q{spec.q}"
        params = {"k": spec.k, "m": spec.m, "q": spec.q}
    elif args.what == "sparse-critical":
        g = sparse_critical(args.k, args.n)
        stem = f"sparse_k{args.k}_n{args.n}"
        params = {"k": args.k, "n": args.n}
    elif args.what == "glue":
        recipe = load_recipe(Path(args.recipe), args.budget)
        g = glue(recipe)
        stem = Path(args.recipe).stem + "_glued"
        params = {"recipe": str(args.recipe)}
    elif args.what == "kr":
        plan = build_kr(args.k, args.r, args.n)
        stem = f"kr_k{args.k}_r{args.r}_n{args.n}"
        out_dir.mkdir(parents=True, exist_ok=True)
        plan_path = out_dir / f"{stem}.plan.json"
        plan_path.write_text(plan.to_json() + "\n")
        files = {"plan": str(plan_path)}
        params = {"k": args.k, "r": args.r, "n": args.n, "materialize": args.materialize}
        outcome = "planned"
        if args.materialize:
            g = materialize(plan, args.budget)
            if isinstance(g, Graph):
                col_path = out_dir / f"{stem}.col"
                col_path.write_text(to_dimacs(g))
                files["dimacs"] = str(col_path)
                outcome = "materialized"
            else:
                outcome = "implicit"
        report = make_report(None, "build kr", params, outcome)
        report["files"] = files
        report["plan"] = {"modulus": plan.modulus, "x": plan.x, "h": plan.h, "m": plan.m, "t": plan.t}
        _emit(args, dumps(report))
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(args.what)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{stem}.col"
    path.write_text(to_dimacs(g))
    report = make_report(None, f"build {args.what}", params, "built")
    report["files"] = {"dimacs": str(path)}
    report["order"], report["edges"] = g.order, g.edge_count
    _emit(args, dumps(report))
    return EXIT_OK


def load_recipe(path: Path, budget: int = DEFAULT_EDGE_BUDGET) -> GlueRecipe:
    """Recipe JSON::

        {"k": 4, "host": "complete:4",
         "parts": [{"graph": "wheel:6", "vertex": 5, "coloring": "auto"}, ...],
         "host_edges": [[0, 1], ...]}           # optional

    ``coloring`` is ``"auto"`` or a ``{vertex: color}`` object.
    """
    from .composer import part_for

    spec = json.loads(path.read_text())
    k = int(spec["k"])
    host = parse_graph_arg(spec["host"], budget)
    parts = []
    for entry in spec["parts"]:
        g = parse_graph_arg(entry["graph"], budget)
        v = int(entry.get("vertex", 0))
        col = entry.get("coloring", "auto")
        if col == "auto":
            parts.append(part_for(g, k, v))
        else:
            parts.append(GluePart(g, v, Coloring.from_mapping(k - 1, g.order, {int(a): b for a, b in col.items()})))
    host_edges = [tuple(e) for e in spec["host_edges"]] if "host_edges" in spec else None
    return GlueRecipe(host, parts, k, host_edges)


def cmd_verify(args) -> int:
    if args.what == "jensen":
        return _verify_jensen(args)
    g = _graph(args)
    if args.what == "vertex-critical":
        params = {"k": args.k, "edges": args.edges}

        def compute():
            try:
                rep = is_vertex_critical(g, args.k, edges=args.edges)
            except BudgetExceeded as exc:
                return make_report(args.graph, "verify vertex-critical", params, "inconclusive", {"error": str(exc)}), EXIT_INCONCLUSIVE
            body = rep.to_json()
            outcome = "true" if rep.is_vertex_critical else "false"
            return make_report(args.graph, "verify vertex-critical", params, outcome, body, rep.stats), (
                EXIT_OK if rep.is_vertex_critical else EXIT_REFUTED
            )

        return _cached_run(args, "verify vertex-critical", g, params, compute)

    params = {"k": args.k, "r": args.r, "mode": args.mode, "seed": args.seed, "trials": args.trials, "max_checks": args.max_checks}
    resume = tuple(args.resume) if args.resume else None

    def compute():
        try:
            v = verify_kr(
                g, args.k, args.r, args.mode, seed=args.seed, trials=args.trials, max_checks=args.max_checks, resume_from=resume
            )
        except BudgetExceeded as exc:
            return make_report(args.graph, "verify kr", params, "inconclusive", {"error": str(exc)}), EXIT_INCONCLUSIVE
        code = {"confirmed": EXIT_OK, "refuted": EXIT_REFUTED}.get(v.outcome, EXIT_INCONCLUSIVE)
        body = v.to_json()
        return (
            make_report(args.graph, "verify kr", params, v.outcome, body, v.stats, list(resume) if resume else None),
            code,
        )

    return _cached_run(args, "verify kr", g, {**params, "resume": args.resume}, compute)


def jensen_report(spec: CirculantSpec) -> dict:
    g = build_circulant(spec)
    col = jensen_coloring(spec)
    n, N = spec.period, spec.order
    bad = is_proper(g, col)
    per = check_periodic(col, n, (1, N - 1))
    uniform = n // (spec.k - 1)
    count_ok = all(
        window_color_counts(col, s, n) == {c: uniform for c in range(1, spec.k)} for s in range(1, N - n + 1, n)
    )
    checks = {
        "proper": not bad,
        "monochromatic_edges": [list(e) for e in bad[:10]],
        "periodic": per.is_periodic,
        "uniform_window_counts": count_ok,
    }
    if spec.k >= 5:
        st = detect_structure(col, spec.m, (1, N - 1))
        checks["structure"] = st.ok
        checks["t_even"], checks["t_odd"] = st.t_even, st.t_odd
    checks["all_pass"] = checks["proper"] and checks["periodic"] and count_ok and checks.get("structure", True)
    return checks


def _verify_jensen(args) -> int:
    spec = parse_spec_literal(args.graph)
    checks = jensen_report(spec)
    outcome = "true" if checks["all_pass"] else "false"
    _emit(args, dumps(make_report(args.graph, "verify jensen", {}, outcome, checks)))
    return EXIT_OK if checks["all_pass"] else EXIT_REFUTED


def cmd_chi(args) -> int:
    g = _graph(args)

    def compute():
        try:
            res = chromatic_number(g, node_budget=args.node_budget)
        except BudgetExceeded as exc:
            return make_report(args.graph, "chi", {}, "inconclusive", {"error": str(exc)}), EXIT_INCONCLUSIVE
        body = res.to_json()
        rep = make_report(args.graph, "chi", {}, res.chi, {"certificate": body["certificate"], "coloring": body["witness"]}, res.stats)
        return rep, EXIT_OK

    return _cached_run(args, "chi", g, {}, compute)


def cmd_decide(args) -> int:
    g = _graph(args)
    stats = SearchStats()
    try:
        col = decide_colorable(g, args.colors, node_budget=args.node_budget, stats=stats)
    except BudgetExceeded as exc:
        _emit(args, dumps(make_report(args.graph, "decide", {"C": args.colors}, "inconclusive", {"error": str(exc)}, stats)))
        return EXIT_INCONCLUSIVE
    if col is not None and args.witness:
        Path(args.witness).write_text(col.to_text())
    outcome = "colorable" if col is not None else "impossible"
    _emit(args, dumps(make_report(args.graph, "decide", {"C": args.colors}, outcome, None, stats)))
    return EXIT_OK if col is not None else EXIT_IMPOSSIBLE


def cmd_find_critical_set(args) -> int:
    g = _graph(args)
    params = {"k": args.k, "r_max": args.r_max}

    def compute():
        if args.r_max is None:
            edges = find_critical_set_greedy(g, args.k)
            bound = (g.order - 1) / (args.k - 1)
            body = {"method": "greedy", "edges": sorted(list(e) for e in edges), "size": len(edges), "bound": bound}
            return make_report(args.graph, "find-critical-set", params, "found", body), EXIT_OK
        res = smallest_critical_set(g, args.k, args.r_max)
        if res.edges is None:
            return make_report(args.graph, "find-critical-set", params, "none", {"checked_sets": res.checked_sets}), EXIT_REFUTED
        body = {"method": "exhaustive", "edges": sorted(list(e) for e in res.edges), "coloring": res.witness.as_dict()}
        return make_report(args.graph, "find-critical-set", params, "found", body), EXIT_OK

    return _cached_run(args, "find-critical-set", g, params, compute)


def cmd_search_dirac4(args) -> int:
    summary = run_search(args.frontier, args.n_min, args.n_max, args.r, args.max_candidates)
    body = {
        "evaluated_this_run": summary.evaluated,
        "cursor": summary.cursor,
        "total": summary.total,
        "complete": summary.complete,
        "survivors": summary.survivors,
        "verdict_log": str(verdict_log_path(args.frontier)),
    }
    outcome = "survivor-found" if summary.survivors else ("complete" if summary.complete else "partial")
    params = {"n_min": args.n_min, "n_max": args.n_max, "r": args.r, "degree": 6}
    _emit(args, dumps(make_report(None, "search-dirac4", params, outcome, body)))
    if summary.survivors:
        return EXIT_OK
    return EXIT_REFUTED if summary.complete else EXIT_INCONCLUSIVE


def cmd_report(args) -> int:
    path = Path(args.file)
    if path.name.endswith(".frontier.json"):
        state = json.loads(path.read_text())
        recs = read_verdicts(verdict_log_path(path))
        stages: dict[str, int] = {}
        for rec in recs:
            stages[rec["stage"]] = stages.get(rec["stage"], 0) + 1
        body = {"frontier": state, "verdicts": len(recs), "by_stage": dict(sorted(stages.items()))}
    else:
        body = json.loads(path.read_text())
    sys.stdout.write(dumps(body))
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

CONFIG_KEYS = {"budget": int, "node_budget": int, "cache_dir": str, "out_dir": str}


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = CONFIG_KEYS[key](val)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file; flags win")
    common.add_argument("--budget", type=int, default=DEFAULT_EDGE_BUDGET, help="edge budget for materialization")
    common.add_argument("--node-budget", type=int, default=5_000_000, help="search node budget per solver call")
    common.add_argument("--cache-dir", default=None, help="directory for run records (enables caching)")
    common.add_argument("--out", default=None, help="also write the JSON report here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="critgraph", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="construct graphs or plans")
    bsub = b.add_subparsers(dest="what", required=True)
    bc = bsub.add_parser("circulant", parents=[common])
    bc.add_argument("--k", type=int, required=True)
    bc.add_argument("--m", type=int, required=True)
    bc.add_argument("--q", type=int, required=True)
    bs = bsub.add_parser("sparse-critical", parents=[common])
    bs.add_argument("--k", type=int, required=True)
    bs.add_argument("--n", type=int, required=True)
    bg = bsub.add_parser("glue", parents=[common])
    bg.add_argument("--recipe", required=True)
    bk = bsub.add_parser("kr", parents=[common])
    bk.add_argument("--k", type=int, required=True)
    bk.add_argument("--r", type=int, required=True)
    bk.add_argument("--n", type=int, required=True)
    bk.add_argument("--materialize", action="store_true")
    for sp in (bc, bs, bg, bk):
        sp.add_argument("--out-dir", default=".")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="criticality and structure checks")
    vsub = v.add_subparsers(dest="what", required=True)
    vv = vsub.add_parser("vertex-critical", parents=[common])
    vv.add_argument("graph")
    vv.add_argument("--k", type=int, required=True)
    vv.add_argument("--edges", action="store_true", help="also classify every edge")
    vk = vsub.add_parser("kr", parents=[common])
    vk.add_argument("graph")
    vk.add_argument("--k", type=int, required=True)
    vk.add_argument("--r", type=int, required=True)
    vk.add_argument("--mode", choices=["exhaustive", "sampled", "greedy-refutation"], default="exhaustive")
    vk.add_argument("--seed", type=int, default=0)
    vk.add_argument("--trials", type=int, default=1000)
    vk.add_argument("--max-checks", type=int, default=None)
    vk.add_argument("--resume", type=int, nargs=2, metavar=("SIZE", "RANK"))
    vj = vsub.add_parser("jensen", parents=[common])
    vj.add_argument("graph", help="spec literal, e.g. circ:k=7,m=3,q=4")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chi", parents=[common], help="chromatic number with certificate")
    c.add_argument("graph")
    c.set_defaults(func=cmd_chi)

    d = sub.add_parser("decide", parents=[common], help="exit 0 iff the graph is C-colorable")
    d.add_argument("graph")
    d.add_argument("colors", type=int)
    d.add_argument("--witness", help="write the coloring here")
    d.set_defaults(func=cmd_decide)

    f = sub.add_parser("find-critical-set", parents=[common])
    f.add_argument("graph")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--r-max", type=int, default=None, help="exhaustive minimum search instead of the greedy bound")
    f.set_defaults(func=cmd_find_critical_set)

    s = sub.add_parser("search-dirac4", parents=[common], help="6-regular circulant (4,r)-graph search")
    s.add_argument("--n-min", type=int, default=11)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--frontier", default="dirac4.frontier.json")
    s.add_argument("--max-candidates", type=int, default=None)
    s.set_defaults(func=cmd_search_dirac4)

    r = sub.add_parser("report", parents=[common], help="summarize a report or frontier file")
    r.add_argument("file")
    r.set_defaults(func=cmd_report)
    return p


def parse_args(argv=None) -> argparse.Namespace:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    parser = build_parser()
    if known.config:
        cfg = read_config(known.config)
        # defaults must reach the subparsers too, where the flags are parsed
        _set_defaults_recursive(parser, cfg)
    return parser.parse_args(argv)


def _set_defaults_recursive(parser: argparse.ArgumentParser, cfg: dict) -> None:
    parser.set_defaults(**{k: v for k, v in cfg.items() if any(a.dest == k for a in parser._actions)})
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for child in action.choices.values():
                _set_defaults_recursive(child, cfg)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, MaterializationRefused) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
