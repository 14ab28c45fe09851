"""Rewriting machines: Reidemeister moves, stabilization, canonical keys and equivalence search."""

from .moves import (
    AFTER,
    BEFORE,
    MoveKind,
    MoveSite,
    apply_move,
    enumerate_moves,
    inverse_site,
    r1_minus,
    r1_plus,
    r2_minus,
    r2_plus,
    r3,
    replay,
    stab_minus,
    stab_plus,
)
from .canonical import canonical_key, canonical_labeling, isomorphism
from .invariants import InvariantProfile, invariant_profile
from .search import SearchBudget, SearchResult, SearchStatus, search_equivalent

__all__ = [
    "AFTER",
    "BEFORE",
    "InvariantProfile",
    "MoveKind",
    "MoveSite",
    "SearchBudget",
    "SearchResult",
    "SearchStatus",
    "apply_move",
    "canonical_key",
    "canonical_labeling",
    "enumerate_moves",
    "invariant_profile",
    "inverse_site",
    "isomorphism",
    "r1_minus",
    "r1_plus",
    "r2_minus",
    "r2_plus",
    "r3",
    "replay",
    "search_equivalent",
    "stab_minus",
    "stab_plus",
]
