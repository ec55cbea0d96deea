"""Fault-tolerant cycle embedding in balanced hypercube networks."""

from bhcycles.topology import (
    BalancedHypercube,
    InternalGuaranteeError,
    InvalidInputError,
    build_hypercube,
    build_recursive,
    canonical_edge,
    component_split_dim0,
    split,
)

__all__ = [
    "BalancedHypercube",
    "InternalGuaranteeError",
    "InvalidInputError",
    "build_hypercube",
    "build_recursive",
    "canonical_edge",
    "component_split_dim0",
    "split",
]
