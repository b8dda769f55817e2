"""Cubic plane graph constructions, Hamiltonicity search and pulling tetrahedralizations."""
from .blowup import (
    EmbeddedCubic,
    blow_up,
    cube,
    cycles_per_copy,
    inter_copy_edges,
    k4,
    k4_counterexample,
    load_gadget,
    lower_bound_family,
    matching_cycles,
)
from .pulling import pulling_face, pulling_tetrahedralization
from .search import SearchResult, find_ham_cycle, find_ham_path, is_ham_cycle, is_ham_path

__all__ = [
    "EmbeddedCubic",
    "SearchResult",
    "blow_up",
    "cube",
    "cycles_per_copy",
    "find_ham_cycle",
    "find_ham_path",
    "inter_copy_edges",
    "is_ham_cycle",
    "is_ham_path",
    "k4",
    "k4_counterexample",
    "load_gadget",
    "lower_bound_family",
    "matching_cycles",
    "pulling_face",
    "pulling_tetrahedralization",
]
