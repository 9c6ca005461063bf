"""Output ranges, membership tests and optimal witnesses for qubit POVMs."""

from .catalog import CatalogKind, closed_form_membership, make, make_noisy
from .errors import PovmRangeError
from .linalg import eig_sym, lambda_max_qubit, pinv_sym
from .oracle import feasibility_membership, random_povm, sample_distributions
from .povm import Effect, Povm, depolarize, effect_from_matrix, effect_to_matrix, validate_povm
from .range_model import (
    Region,
    Status,
    Verdict,
    build_range_model,
    geometry,
    membership,
    optimal_witness,
)
from .witness import CorrelationTable, compatibility_gap, test_correlation, witness_threshold

__all__ = [
    "CatalogKind",
    "CorrelationTable",
    "Effect",
    "Povm",
    "PovmRangeError",
    "Region",
    "Status",
    "Verdict",
    "build_range_model",
    "closed_form_membership",
    "compatibility_gap",
    "depolarize",
    "effect_from_matrix",
    "effect_to_matrix",
    "eig_sym",
    "feasibility_membership",
    "geometry",
    "lambda_max_qubit",
    "make",
    "make_noisy",
    "membership",
    "optimal_witness",
    "pinv_sym",
    "random_povm",
    "sample_distributions",
    "test_correlation",
    "validate_povm",
    "witness_threshold",
]
