"""
Theta series: ellipsoid truncation, reproducible summation and evaluation.
"""

from .lattice import (
    EllipsoidPoints,
    enumerate_ellipsoid,
    minimal_radius,
    shortest_vector_bound,
    tail_bound,
    truncation_radius,
    whitening_factor,
)
from .summation import compensated_sum, pairwise_tree_sum
from .evaluation import (
    DEFAULT_POLICY,
    LatticeVector,
    ThetaCharacteristic,
    ThetaEvalResult,
    factor_of_automorphy,
    level_k_basis,
    level_k_basis_many,
    level_k_characteristic,
    level_k_normalization,
    second_order_basis,
    section_space_dimension,
    theta_eval,
    theta_eval_detailed,
    theta_eval_many,
)

__all__ = [
    # Truncation
    "EllipsoidPoints",
    "enumerate_ellipsoid",
    "minimal_radius",
    "shortest_vector_bound",
    "tail_bound",
    "truncation_radius",
    "whitening_factor",
    # Reductions
    "compensated_sum",
    "pairwise_tree_sum",
    # Evaluation
    "DEFAULT_POLICY",
    "LatticeVector",
    "ThetaCharacteristic",
    "ThetaEvalResult",
    "factor_of_automorphy",
    "level_k_basis",
    "level_k_basis_many",
    "level_k_characteristic",
    "level_k_normalization",
    "second_order_basis",
    "section_space_dimension",
    "theta_eval",
    "theta_eval_detailed",
    "theta_eval_many",
]
