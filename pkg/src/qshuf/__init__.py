"""qshuf: exact shuffle-algebra computations for doubled quivers."""

from .quiver import Quiver, jordan, kronecker, loop_quiver
from .fields import ExactRationalField, SpecializedField, make_field
from .laurent import SymLaurent, symmetrize, substitute, degree_profile
from .algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement, ZetaFactor

__all__ = [
    "Quiver",
    "jordan",
    "kronecker",
    "loop_quiver",
    "SpecializedField",
    "ExactRationalField",
    "make_field",
    "SymLaurent",
    "symmetrize",
    "substitute",
    "degree_profile",
    "ShuffleAlgebra",
    "ShuffleElement",
    "ZetaFactor",
    "PLUS",
    "MINUS",
]
