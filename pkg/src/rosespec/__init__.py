"""Exact spectral tools for rose graphs and their Laplacian cospectral mates."""
from ._jit import JIT_ENABLED
from .graph import (Graph, GraphFormatError, RoseSpec, build_rose, canonical_label,
                    connected_components, degree_sequence, delete_vertices,
                    parse_graph6, write_graph6)
from .invariants import (ADJACENCY, LAPLACIAN, SIGNLESS, UniversalParams, cospectral,
                         spectral_report, universal_char_poly, universal_laplacian)
from .linalg import Polynomial, char_poly, determinant, spanning_tree_count, trace_power
from .sachs import matchings_count, rose_matchings, sachs_coefficient
from .search import (PruneConfig, SearchResult, SearchTask, enumerate_connected,
                     find_cospectral_mates, verify_rose_determination,
                     verify_rose_vs_rose)

__version__ = "0.1.0"
