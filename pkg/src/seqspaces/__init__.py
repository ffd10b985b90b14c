"""Norms, bases, and block constructions on weighted sequence spaces.

Finitely supported vectors with exact (or certified-bracket) norm
evaluation for rearranged-weighted, subsequence-weighted, suffix-sup,
prefix-average, and blocked families; dual basis scalings; minimal block
systems with averaging projections; and equivalence-constant estimators.
"""

from .bases import (
    LayeredVec,
    TandoriVpReport,
    conjugate,
    duality_pair,
    embed_tandori_lpc0,
    f_coeffs_to_raw,
    f_scale,
    g_norm_in_cesaro,
    g_scale,
    g_vector,
    tandori_vp_check,
)
from .blocks import (
    BlockSystem,
    Level,
    WpEquivReport,
    averaging_projection,
    expand,
    fdd_block_check,
    find_block_sizes,
    warm_prefix_sums,
    wp_equivalence_ratios,
    wp_norm,
)
from .constants import (
    EquivReport,
    HolderReport,
    LinfEquivReport,
    estimate_equivalence,
    holder_domination,
    linf_equiv_bound,
    unconditional_constant,
)
from .errors import DomainError, ParseError, ScanCapExceeded
from .norms import (
    SpaceSpec,
    blocksum_norm,
    cesaro_norm,
    epw_norm,
    format_exponent,
    garling_norm,
    garling_norm_bruteforce,
    garling_norm_runs,
    lorentz_norm,
    lorentz_norm_runs,
    lp_norm,
    norm,
    parse_exponent,
    parse_space,
    tandori_norm,
)
from .series import Bracket, power_tail_bracket, zeta_bracket
from .suites import SUITE_NAMES, SuiteReport, run_suite
from .vectors import CoeffVec, RunVec, add_coeffvecs, parse_vector_json
from .weights import (
    ConditionReport,
    Weight,
    check_2sb,
    check_nuc,
    check_summable,
    make_weight,
)

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "BlockSystem",
    "CoeffVec",
    "ConditionReport",
    "DomainError",
    "EquivReport",
    "HolderReport",
    "LayeredVec",
    "Level",
    "LinfEquivReport",
    "ParseError",
    "RunVec",
    "ScanCapExceeded",
    "SpaceSpec",
    "SuiteReport",
    "SUITE_NAMES",
    "TandoriVpReport",
    "Weight",
    "WpEquivReport",
    "add_coeffvecs",
    "averaging_projection",
    "blocksum_norm",
    "cesaro_norm",
    "check_2sb",
    "check_nuc",
    "check_summable",
    "conjugate",
    "duality_pair",
    "embed_tandori_lpc0",
    "epw_norm",
    "estimate_equivalence",
    "expand",
    "f_coeffs_to_raw",
    "f_scale",
    "fdd_block_check",
    "find_block_sizes",
    "format_exponent",
    "g_norm_in_cesaro",
    "g_scale",
    "g_vector",
    "garling_norm",
    "garling_norm_bruteforce",
    "garling_norm_runs",
    "holder_domination",
    "linf_equiv_bound",
    "lorentz_norm",
    "lorentz_norm_runs",
    "lp_norm",
    "make_weight",
    "norm",
    "parse_exponent",
    "parse_space",
    "parse_vector_json",
    "power_tail_bracket",
    "run_suite",
    "tandori_norm",
    "tandori_vp_check",
    "unconditional_constant",
    "warm_prefix_sums",
    "wp_equivalence_ratios",
    "wp_norm",
    "zeta_bracket",
]
