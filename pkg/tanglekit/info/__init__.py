"""Entropy-coloured machines: capacities, mutual information and local optimality."""

from .entropy import (
    EntropySpec,
    chain_capacities,
    fuse_entropy,
    global_capacity,
    interaction_capacity,
    mutual_information,
)
from .classify import Interaction, InteractionClass, classify_interactions
from .triple import CapacityTriple, build_capacity_triple, capacity_report, classify_triple, demo_spec

__all__ = [
    "CapacityTriple",
    "EntropySpec",
    "Interaction",
    "InteractionClass",
    "build_capacity_triple",
    "capacity_report",
    "chain_capacities",
    "classify_interactions",
    "classify_triple",
    "demo_spec",
    "fuse_entropy",
    "global_capacity",
    "interaction_capacity",
    "mutual_information",
]
