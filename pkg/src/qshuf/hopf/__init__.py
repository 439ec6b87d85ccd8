"""Hopf-algebra layer: words, pairing, coproducts, slope factorization."""

from .words import GeneratorWord, expand_word, express_in_words
from .pairing import (
    bialgebra_check_minus,
    bialgebra_check_plus,
    pair_cartan_words,
    pair_elements,
    pair_poly_word,
    pair_word_poly,
    pair_word_word,
)
from .coproduct import (
    CartanWord,
    MixedTensor,
    check_membership,
    coproduct_component,
    delta_m,
    delta_m_pairing_minus,
    delta_m_pairing_plus,
    primitive_check,
)
from .pbw import Hinge, bad_hinges, naive_slope_r, pbw_decompose
from .rmatrix import DualBases, dual_bases, rprime_window_check

__all__ = [
    "GeneratorWord",
    "expand_word",
    "express_in_words",
    "pair_poly_word",
    "pair_word_poly",
    "pair_word_word",
    "pair_elements",
    "pair_cartan_words",
    "bialgebra_check_plus",
    "bialgebra_check_minus",
    "CartanWord",
    "MixedTensor",
    "coproduct_component",
    "check_membership",
    "delta_m",
    "delta_m_pairing_plus",
    "delta_m_pairing_minus",
    "primitive_check",
    "Hinge",
    "bad_hinges",
    "naive_slope_r",
    "pbw_decompose",
    "DualBases",
    "dual_bases",
    "rprime_window_check",
]
