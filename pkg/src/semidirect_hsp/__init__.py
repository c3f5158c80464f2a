"""Hidden subgroup problem on semi-direct products Z_N x|_phi Z_p.

Exact group arithmetic, the subgroup classification for the canonical groups on
Z_{2^t0 p^r}, the coprime decomposition of general groups, hiding oracles, and a
dense simulation of the Fourier-sampling solver with seeded experiments.
"""
from .decomposition import DecomposedSpec, check_hypothesis, decompose, map_element, unmap_element
from .errors import DomainError, SolverFailure, TheoryViolation
from .experiments import cyclic_error_bound, estimate_success, success_bound
from .group import Element, GroupSpec, canonical_spec, parse_element, validate_spec
from .oracle import HidingOracle, make_keyed_oracle, make_oracle, verify_hiding
from .qsim import QState, RoundOutcome, abelian_hsp_cyclic, post_collapse_distribution, qft_p, run_round
from .solver import SolveResult, solve_2pr, solve_general
from .subgroups import (
    CyclicX,
    ExplicitSet,
    TwoGen,
    YJoin,
    closure,
    coset_label,
    enumerate_subgroups,
    membership,
    parse_subgroup,
)

__version__ = "0.1.0"
