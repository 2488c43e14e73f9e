"""
Graph representation, exact connectivity and adversarial generators.
"""

from .connectivity import DisjointSet, connected_components, is_connected, separated_pair
from .generators import (
    INSTANCE_NAMES,
    build_instance,
    gen_barbell,
    gen_chain_sbm,
    gen_visible_barbell,
    visible_bridge_freq,
)
from .io import read_edge_list, read_frequency_file, write_edge_list, write_frequency_file
from .models import Edge, FrequencyModel, GeneratedInstance, Graph

__all__ = [
    "DisjointSet",
    "Edge",
    "FrequencyModel",
    "GeneratedInstance",
    "Graph",
    "INSTANCE_NAMES",
    "build_instance",
    "connected_components",
    "gen_barbell",
    "gen_chain_sbm",
    "gen_visible_barbell",
    "is_connected",
    "read_edge_list",
    "read_frequency_file",
    "separated_pair",
    "visible_bridge_freq",
    "write_edge_list",
    "write_frequency_file",
]
