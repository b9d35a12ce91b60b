"""P-forests, the ideal graph G_P and exact P-partition generating functions."""

from .errors import CapExceeded, LabelingError, ParseError, PosetError, TheoremViolation
from .forests import (
    DescentData,
    PForest,
    component_descents,
    enumerate_pforests,
    is_pforest,
    mis_descents,
    phi,
    psi,
    verify_decomposition,
)
from .genfun import (
    FactoredGF,
    QPoly,
    count_linear_extensions,
    expand_series,
    factored_fpx,
    format_gf,
    forest_sum_gf,
    fpq,
    fpx_duplication_path,
)
from .idealgraph import (
    IdealGraph,
    build_ideal_graph,
    chi_subgraph,
    component_jmax,
    enumerate_connected_ideals,
    is_forest_with_duplications,
)
from .io import load_poset, parse_poset_text
from .mis import (
    MaxIndSet,
    all_component_mis,
    enumerate_component_mis,
    enumerate_global_mis,
    label_map,
    mu,
    prec,
    u_max,
)
from .poset import (
    Ideal,
    Poset,
    build_poset,
    generating_set,
    is_connected_ideal,
    is_naturally_labeled,
    linear_extensions,
    natural_relabel,
    principal_ideal,
)
from .verify import Budgets, VerificationReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "Budgets",
    "CapExceeded",
    "DescentData",
    "FactoredGF",
    "Ideal",
    "IdealGraph",
    "LabelingError",
    "MaxIndSet",
    "PForest",
    "ParseError",
    "Poset",
    "PosetError",
    "QPoly",
    "TheoremViolation",
    "VerificationReport",
    "all_component_mis",
    "build_ideal_graph",
    "build_poset",
    "chi_subgraph",
    "component_descents",
    "component_jmax",
    "count_linear_extensions",
    "enumerate_component_mis",
    "enumerate_connected_ideals",
    "enumerate_global_mis",
    "enumerate_pforests",
    "expand_series",
    "factored_fpx",
    "forest_sum_gf",
    "format_gf",
    "fpq",
    "fpx_duplication_path",
    "generating_set",
    "is_connected_ideal",
    "is_forest_with_duplications",
    "is_naturally_labeled",
    "is_pforest",
    "label_map",
    "linear_extensions",
    "load_poset",
    "mis_descents",
    "mu",
    "natural_relabel",
    "parse_poset_text",
    "phi",
    "prec",
    "principal_ideal",
    "psi",
    "u_max",
    "verify_all",
    "verify_decomposition",
]
