"""Numerical laboratory for products of s-nuclear operators.

Builds explicit factorizations ``T = B U A`` of operator products through
Schatten-class operators on l_2, checks them, and runs the Carleman
convolution experiment showing that two nuclear factors need S_2.
"""

from .config import DEFAULT, Config
from .linalg import Matrix, NormValue, dft, eigh, hs_norm, operator_norm, schatten_norm, svd, svd_decompose, trace_power
from .sequences import GrowthProfile, dyadic_checkpoints, growth_exponent_fit, lp_partial_profile, membership_verdict
from .carleman import CarlemanSymbol, carleman_coefficients, carleman_symbol, sup_norm_estimate, synthesize
from .operators import (CanonicalChain, MarkedOperator, NuclearRep, canonical_factorization, circulant_operator,
                        nu_s_from_rep, nu_s_hilbert_exact, random_nuclear, svd_rep)
from .factorization import (ExponentBudget, FactorizationCertificate, allocation_plan, chain_product,
                            compose_exponent, factor_product, schatten_hoelder_check, verify_certificate)
from .experiments import (SweepReport, pi2_upper_bound, rotation_trace_check, sharpness_sweep,
                          square_eigen_sequence)

__version__ = "0.1.0"
