"""Iterated machines: filters, Markov chains, their rewrites and steady states."""

from .iteration import (
    IterationSpec,
    IterationTrace,
    basic_impulse_weights,
    basic_output,
    basic_unit,
    basic_weights,
    iterate,
    stack,
)
from .steady import SteadyState, steady_state
from .transition import Stability, TransitionMatrix, internal_stability, transfer_matrix
from .units import (
    FeedBack,
    FeedForward,
    MarkovUnit,
    feed_back_unit,
    feed_forward_unit,
    interface_matrix,
    kauffman_is_steady,
    kauffman_report,
    kauffman_sweep,
    kauffman_unit,
    markov_matrix,
    markov_report,
    markov_unit,
)

__all__ = [
    "FeedBack",
    "FeedForward",
    "IterationSpec",
    "IterationTrace",
    "MarkovUnit",
    "Stability",
    "SteadyState",
    "TransitionMatrix",
    "basic_impulse_weights",
    "basic_output",
    "basic_unit",
    "basic_weights",
    "feed_back_unit",
    "feed_forward_unit",
    "interface_matrix",
    "internal_stability",
    "iterate",
    "kauffman_is_steady",
    "kauffman_report",
    "kauffman_sweep",
    "kauffman_unit",
    "markov_matrix",
    "markov_report",
    "markov_unit",
    "stack",
    "steady_state",
    "transfer_matrix",
]
