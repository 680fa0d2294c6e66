"""Characteristic-polynomial representation of pure qubit states.

A state ``sum_i C_i |i>`` maps to ``P(x) = sum_i C_i x**i``; product states
are exactly those whose polynomial factors as ``prod_j (a_j + b_j x**(2**j))``.
"""

__version__ = "0.1.0"

from .charpoly import (
    CharPolynomial,
    compose_power,
    divide_by_binomial,
    evaluate,
    from_state,
    lowest_power,
    multiply,
)
from .oracle import (
    det_rho,
    oracle_separable,
    oracle_unentangled_count,
    reduced_density_matrix,
)
from .roots import RootSet, SolverConfig, find_roots, round_trip_fidelity, state_from_roots
from .separability import (
    CandidateRoots,
    SeparabilityReport,
    candidate_roots,
    check_condition_Ib,
    extract_factors,
    is_separable,
    reconstruction_distance,
    separability_score,
    split_check,
)
from .state import (
    PureState,
    SiteFactor,
    build_product_state,
    digit_at,
    random_product_state,
    random_state,
    tensor_product,
)
from .unentangled import QubitStatus, UnentangledReport, check_site, count_unentangled, upper_bound
