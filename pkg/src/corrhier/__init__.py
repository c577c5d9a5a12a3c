"""Exact k-party correlation hierarchies of graph and stabilizer states."""

from .errors import (
    CapacityError,
    CorrHierError,
    DimensionError,
    DomainError,
    GroupError,
    ParseError,
    PhaseError,
)
from .graphs import (
    Graph,
    OrbitReport,
    enumerate_connected_graphs,
    graph_hierarchy,
    graph_state_stabilizer,
    lc_orbits,
    local_complement,
    parse_edge_list,
    parse_graph6,
    to_graph6,
)
from .pauli import PauliString, commutes, multiply, pauli_from_text, pauli_to_text, weight
from .stabilizer import (
    CorrelationHierarchy,
    RankProfile,
    StabilizerGroup,
    enumerate_elements,
    gf2_rank,
    hierarchy,
    make_group,
    rank_profile,
    witness_operators,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CorrHierError",
    "CorrelationHierarchy",
    "DimensionError",
    "DomainError",
    "Graph",
    "GroupError",
    "OrbitReport",
    "ParseError",
    "PauliString",
    "PhaseError",
    "RankProfile",
    "StabilizerGroup",
    "commutes",
    "enumerate_connected_graphs",
    "enumerate_elements",
    "gf2_rank",
    "graph_hierarchy",
    "graph_state_stabilizer",
    "hierarchy",
    "lc_orbits",
    "local_complement",
    "make_group",
    "multiply",
    "parse_edge_list",
    "parse_graph6",
    "pauli_from_text",
    "pauli_to_text",
    "rank_profile",
    "to_graph6",
    "weight",
    "witness_operators",
]
