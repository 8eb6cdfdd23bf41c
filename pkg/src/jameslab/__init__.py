"""Executable finite-dimensional James-space geometry.

James p-norms with an exhaustive oracle, alternating-sign witness vectors
in subspaces of R^N with verifiable certificates, Bernstein-number
estimates for the J_p -> J_q inclusion against closed-form bounds, and a
truncated weighted unilateral shift on an l2-direct sum of James spaces.
"""

__version__ = "0.1.0"

from .alternation import (AlternationCertificate, InjectivityReport,
                          PolySignVerdict, ProjectionChain, Subspace,
                          TruncationReport, VerifyResult, alternation_count,
                          find_witness, injectivity_probe, interleave_indices,
                          poly_sign_check, random_subspace,
                          truncation_stabilize, vandermonde_chain,
                          verify_certificate)
from .bernstein import (BernsteinEstimate, SphereMinimum, UpperBounds,
                        bernstein_lower_estimate, estimates_to_csv,
                        estimates_to_jsonl, inclusion_upper_bounds,
                        min_on_sphere, staircase_subspace)
from .errors import (DimensionError, InvalidExponent, InvariantViolation,
                     JamesLabError, LemmaViolation, NoWitnessFound, ParseError,
                     RankDeficient, ShapeMismatch, SingularSystem, TooLarge)
from .james import (InterpolationReport, check_interpolation, is_quasi_norm,
                    james_norm, james_norm_oracle, james_norm_rows,
                    james_norm_with_chain, sup_norm)
from .numerics import complement_projector, orthonormalize, solve_square
from .readshift import (DecayCell, DirectSumVec, ShiftConfig, TailProbeReport,
                        apply_shift, block_bernstein_decay, decay_to_csv,
                        direct_sum_norm, load_shift_config, random_direct_sum,
                        tail_norm_probe)

__all__ = [
    "AlternationCertificate", "BernsteinEstimate", "DecayCell",
    "DimensionError", "DirectSumVec", "InjectivityReport",
    "InterpolationReport", "InvalidExponent", "InvariantViolation",
    "JamesLabError", "LemmaViolation", "NoWitnessFound", "ParseError",
    "PolySignVerdict", "ProjectionChain", "RankDeficient", "ShapeMismatch",
    "ShiftConfig", "SingularSystem", "SphereMinimum", "Subspace",
    "TailProbeReport", "TooLarge", "TruncationReport", "UpperBounds",
    "VerifyResult", "alternation_count", "apply_shift",
    "bernstein_lower_estimate", "block_bernstein_decay", "check_interpolation",
    "complement_projector", "decay_to_csv", "direct_sum_norm",
    "estimates_to_csv", "estimates_to_jsonl", "find_witness",
    "inclusion_upper_bounds", "injectivity_probe", "interleave_indices",
    "is_quasi_norm", "james_norm", "james_norm_oracle", "james_norm_rows",
    "james_norm_with_chain", "load_shift_config", "min_on_sphere",
    "orthonormalize", "poly_sign_check", "random_direct_sum",
    "random_subspace", "solve_square", "staircase_subspace", "sup_norm",
    "tail_norm_probe", "truncation_stabilize", "vandermonde_chain",
    "verify_certificate",
]
