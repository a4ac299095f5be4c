"""Scalar linear index coding on side-information digraphs."""

from .bounds import (
    BoundsReport,
    FieldChangeBound,
    LogBound,
    bounds_report,
    chromatic_lower_bound,
    clique_cover_bound,
    clique_cover_certificate,
    field_change_bound,
    increasing_function_lower_bound,
    register_increasing,
)
from .coloring import chromatic_number, fractional_chromatic
from .digraph import (
    Digraph,
    UndirectedGraph,
    bidirectional,
    complement,
    enumerate_digraphs,
    format_digraph,
    is_biclique,
    load_digraph,
    parse_digraph,
    underlying,
)
from .errors import BudgetExceeded, IndexCodingError, InvalidInput, PropertyViolation
from .field import Field, FieldMatrix, make_field, rank
from .hfamily import build_hk, build_matrix_A, complete_digraph, explicit_code_hk, hk_vertex_count, kneser_graph
from .homsearch import VertexMap, find_homomorphism, precedes, verify_homomorphism
from .lincode import (
    LinearCode,
    extract_homomorphism,
    is_valid_linear_code,
    lind,
    minimal_sufficient_families,
    minrank,
    vlind_micro,
)
from .translate import GroupCode, cw_one_to_one, translate_group, translate_linear

__version__ = "0.1.0"
