"""conecheck: conjugation-invariant norms, contraction projections and
covering decompositions, verified exhaustively at finite scale."""

from .perms import (
    IDENTITY,
    OddPermutationError,
    Permutation,
    commutator,
    compose,
    supp_norm,
    three_cycle_norm,
    tr_norm,
)

__all__ = [
    "IDENTITY",
    "OddPermutationError",
    "Permutation",
    "commutator",
    "compose",
    "supp_norm",
    "three_cycle_norm",
    "tr_norm",
]
