"""Partial weight spectra of punctured / shortened pre-transformed polar codes."""

from .code import (CodeSpec, Mode, PreTransform, bit_reversal_pattern, capability_sets,
                   encode, nr_code, reliability_frozen_set, reliability_sequence, u_bit)
from .coset import (INFINITE, CosetEngine, CosetQuery, Message, check_combine, coset_min_weight,
                    coset_mwef, coset_rwef, leaf_init, var_combine)
from .gf2 import bit_reversal, kron_row, prefix_image, rank_profile
from .spectrum import (ListOverflowError, SpectrumResult, enumerate_spectrum,
                       find_min_distance)
from .weights import Monomial, WeightPoly

__all__ = [
    "CodeSpec", "Mode", "PreTransform", "bit_reversal_pattern", "capability_sets", "encode",
    "nr_code", "reliability_frozen_set", "reliability_sequence", "u_bit",
    "INFINITE", "CosetEngine", "CosetQuery", "Message", "check_combine", "coset_min_weight",
    "coset_mwef", "coset_rwef", "leaf_init", "var_combine",
    "bit_reversal", "kron_row", "prefix_image", "rank_profile",
    "ListOverflowError", "SpectrumResult", "enumerate_spectrum", "find_min_distance",
    "Monomial", "WeightPoly",
]
__version__ = "0.1.0"
