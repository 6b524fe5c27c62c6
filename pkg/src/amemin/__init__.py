"""Minimal-support AME states, MDS codes and mutually orthogonal latin hypercubes."""

from .ame import (
    AmeState,
    AmeVerdict,
    code_from_state,
    is_minimal_support,
    state_from_code,
    support,
    verify_ame_combinatorial,
    verify_ame_partial_trace,
)
from .bounds import BoundFact, BoundReport, conditional_n_upper_prime_power, derive_n_upper_from_M, n_report
from .codes import Code, MdsReport, hamming_distance, is_mds, min_distance, oa_check, puncture
from .finite_field import FieldSpec, NotAPrimePower, ZeroInverse, ff_add, ff_inv, ff_mul, make_field
from .latin import (
    HypercubeSet,
    LatinHypercube,
    are_orthogonal,
    code_to_hypercubes,
    hypercubes_to_code,
    is_latin,
    mols_check,
)
from .rs import RsParams, ame_code_for_prime_power, ghz_code, rs_code
from .search import (
    SearchCertificate,
    ame_minimal_exists,
    enumerate_reduced,
    find_transversals,
    has_orthogonal_mate,
    orthogonal_pair_exists,
)

__version__ = "0.1.0"
