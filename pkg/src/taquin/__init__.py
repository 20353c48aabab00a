"""Jeu de taquin emptying on finite posets, d-complete and simultaneity checks,
and an exhaustive census of small posets."""

__version__ = "0.1.0"

from .poset import Poset, canonical_form, from_covers, linear_extensions, linear_extensions_count
from .families import delta, minuscule, rooted_tree, shape, shifted_shape
from .dcomplete import is_dcomplete, is_d3_complete, is_nonoverlapping
from .jdt import is_fair_chart, is_jdt, is_jdt_challenges, is_jdt_definition
from .simultaneous import is_simultaneous, is_strongly_simultaneous

__all__ = [
    "Poset", "canonical_form", "from_covers", "linear_extensions", "linear_extensions_count",
    "delta", "minuscule", "rooted_tree", "shape", "shifted_shape",
    "is_dcomplete", "is_d3_complete", "is_nonoverlapping",
    "is_fair_chart", "is_jdt", "is_jdt_challenges", "is_jdt_definition",
    "is_simultaneous", "is_strongly_simultaneous",
]
