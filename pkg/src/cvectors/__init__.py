"""Exact c-vectors, reflections, GIMs and l-vectors for fork quivers."""

from .quiver import (
    FORK345,
    MARKOV,
    Q233,
    ExchangeMatrix,
    FramedSeed,
    SignCoherenceError,
    apply_sequence,
    mutate_extended,
    sign_vector,
    structural_predicates,
)

__all__ = [
    "FORK345",
    "MARKOV",
    "Q233",
    "ExchangeMatrix",
    "FramedSeed",
    "SignCoherenceError",
    "apply_sequence",
    "mutate_extended",
    "sign_vector",
    "structural_predicates",
]

__version__ = "0.1.0"
