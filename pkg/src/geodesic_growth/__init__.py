"""Exact geodesic and volume growth for virtually abelian groups (and the Heisenberg group)."""

from .analysis import (
    AnalysisError,
    Classification,
    GrowthSequence,
    Recurrence,
    berlekamp_massey,
    classify,
    exponential_rate,
    finite_difference_degree,
    lemma52_bound_check,
    linear_recurrence,
)
from .automaton import (
    ConeDFA,
    InconsistentAtK,
    dfa_count,
    infer_geodesic_dfa,
    infer_with_escalation,
    validate,
)
from .catalog import builtin, builtin_genset
from .documents import DocumentError, GroupDocument, load_group, parse_group_document
from .engine import (
    CensusError,
    ElementCapExceeded,
    GeodesicCensus,
    bfs_census,
    is_geodesic_word,
    letter_stats,
    pure_subalphabet_max_geodesic_length,
    quotient_compare,
)
from .gensets import (
    GenSet,
    GenSetError,
    Letter,
    double,
    from_words,
    g2_short_set,
    main_theorem_genset,
)
from .groups import (
    CoordinateOverflow,
    Epimorphism,
    FiniteGroupTable,
    GroupError,
    HeisenbergGroup,
    VirtuallyAbelianGroup,
    builtin_group,
    normal_closure_index,
)
from .hull import (
    LatticePolygon,
    convex_hull,
    exponential_witness,
    scaled_contains,
    witness_reports,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "CensusError",
    "Classification",
    "ConeDFA",
    "CoordinateOverflow",
    "DocumentError",
    "ElementCapExceeded",
    "Epimorphism",
    "FiniteGroupTable",
    "GenSet",
    "GenSetError",
    "GeodesicCensus",
    "GroupDocument",
    "GroupError",
    "GrowthSequence",
    "HeisenbergGroup",
    "InconsistentAtK",
    "LatticePolygon",
    "Letter",
    "Recurrence",
    "VirtuallyAbelianGroup",
    "berlekamp_massey",
    "bfs_census",
    "builtin",
    "builtin_genset",
    "builtin_group",
    "classify",
    "convex_hull",
    "dfa_count",
    "double",
    "exponential_rate",
    "exponential_witness",
    "finite_difference_degree",
    "from_words",
    "g2_short_set",
    "infer_geodesic_dfa",
    "infer_with_escalation",
    "is_geodesic_word",
    "lemma52_bound_check",
    "letter_stats",
    "linear_recurrence",
    "load_group",
    "main_theorem_genset",
    "normal_closure_index",
    "parse_group_document",
    "pure_subalphabet_max_geodesic_length",
    "quotient_compare",
    "scaled_contains",
    "validate",
    "witness_reports",
]
