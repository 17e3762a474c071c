"""Exact computations with big Witt vectors over F_p, the relative K-groups of
F_p[x]/(x^m), the maps between truncations, and cyclic bar homology."""

from .arith import PrimeP, d_p, r_p, s_p, u_prime, v_cap, vp
from .cyclicbar import build_complex, homology, induced_map, predicted_homology
from .divisor import Divisor, alpha_divisor, div_witt, geq, kills_module
from .groups import FinAbPGroup, PGroupHom
from .kgroups import (
    KMapDesc,
    i0,
    is_zero_map,
    k1_units_oracle,
    ker_coker,
    lemma_exponential_check,
    m0,
    milnor_intersection,
    q0,
    relative_k,
    transfer_map,
    valuation_cross_check,
)
from .truncation import TruncationSet, divisor_set, quotient_set, segment, u_p_of

__all__ = [
    "PrimeP",
    "d_p",
    "r_p",
    "s_p",
    "u_prime",
    "v_cap",
    "vp",
    "build_complex",
    "homology",
    "induced_map",
    "predicted_homology",
    "Divisor",
    "alpha_divisor",
    "div_witt",
    "geq",
    "kills_module",
    "FinAbPGroup",
    "PGroupHom",
    "KMapDesc",
    "i0",
    "is_zero_map",
    "k1_units_oracle",
    "ker_coker",
    "lemma_exponential_check",
    "m0",
    "milnor_intersection",
    "q0",
    "relative_k",
    "transfer_map",
    "valuation_cross_check",
    "TruncationSet",
    "divisor_set",
    "quotient_set",
    "segment",
    "u_p_of",
]

__version__ = "0.1.0"
