"""Exact constant term algebra for type-A rational functions."""
from .laurent import LaurentPoly
from .typea import TypeARational, normalize, ta_full_ct, from_epsilon
from .ctops import ct_pole, pfd
from .forest import Forest, Tree, forest_of_word, forest_realization, parse_forest, parse_word
from .formats import parse_typea
from .xi import OperatorCombo, word_apply, combo_apply, expand_in_basis

__all__ = [
    "LaurentPoly", "TypeARational", "normalize", "ta_full_ct", "from_epsilon",
    "ct_pole", "pfd", "Forest", "Tree", "forest_of_word", "forest_realization",
    "parse_forest", "parse_word", "OperatorCombo", "word_apply", "combo_apply",
    "expand_in_basis", "parse_typea",
]
