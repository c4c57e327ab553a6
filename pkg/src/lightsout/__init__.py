"""Lights Out on graphs: universal solvability, exact censuses of nearly
complete graphs, and uniform sampling of unlabelled graphs."""

from .graph import (
    CapacityError,
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    excess_degree,
    from_edges,
    join,
    path_graph,
    star_graph,
)
from .formats import FormatError, from_edge_list, from_graph6, parse_graph, to_graph6
from .gf2 import Gf2Matrix, kernel_basis, neighborhood_matrix, rank, solve
from .solver import (
    has_even_odd_dominating_set,
    is_universally_solvable,
    join_solvable,
    odd_dominating_set,
    solve_configuration,
)
from .canon import canonical_form, is_isomorphic
from .enumeration import (
    CensusResult,
    compute_E,
    compute_U,
    count_graphs,
    enumerate_by_edges,
    enumerate_by_vertices,
    exact_probability,
)
from .sampler import WormaldParams, compute_weights, oracle_sample, solve_cubic, wormald_sample
from .montecarlo import Estimate, ExperimentConfig, emit_table, margin_of_error, run_experiment

__version__ = "0.1.0"
