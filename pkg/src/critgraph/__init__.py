"""Circulant constructions and exact verification tools for vertex-critical
graphs with no small critical edge sets."""

from .chromatic import (
    BudgetExceeded,
    ChiResult,
    SearchStats,
    brute_force_colorable,
    chromatic_number,
    decide_colorable,
)
from .coloring import (
    Coloring,
    UnsupportedParameters,
    check_periodic,
    detect_structure,
    is_proper,
    jensen_coloring,
    parity_violations,
)
from .composer import (
    BuildPlan,
    GluedCirculantGraph,
    GluePart,
    GlueRecipe,
    add_universal_vertex,
    build_kr,
    glue,
    hajos_join,
    sparse_critical,
    swap_coloring,
    wheel,
)
from .criticality import (
    CriticalityReport,
    KrVerdict,
    edge_connectivity,
    find_critical_set_greedy,
    is_vertex_critical,
    prop51_filter,
    verify_kr,
)
from .graph_core import (
    CirculantGraph,
    CirculantSpec,
    DimacsParseError,
    DistanceSet,
    Graph,
    InputError,
    MaterializationRefused,
    build_circulant,
    distance_set,
    from_dimacs,
    period_length,
    to_dimacs,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "BuildPlan",
    "ChiResult",
    "CirculantGraph",
    "CirculantSpec",
    "Coloring",
    "CriticalityReport",
    "DimacsParseError",
    "DistanceSet",
    "GluePart",
    "GlueRecipe",
    "GluedCirculantGraph",
    "Graph",
    "InputError",
    "KrVerdict",
    "MaterializationRefused",
    "SearchStats",
    "UnsupportedParameters",
    "add_universal_vertex",
    "brute_force_colorable",
    "build_circulant",
    "build_kr",
    "check_periodic",
    "chromatic_number",
    "decide_colorable",
    "detect_structure",
    "distance_set",
    "edge_connectivity",
    "find_critical_set_greedy",
    "from_dimacs",
    "glue",
    "hajos_join",
    "is_proper",
    "is_vertex_critical",
    "jensen_coloring",
    "parity_violations",
    "period_length",
    "prop51_filter",
    "sparse_critical",
    "swap_coloring",
    "to_dimacs",
    "verify_kr",
    "wheel",
]
