from .braids import (
    BACKEND, BraidWord, ModelError, Permutation, RibbonBraid, braid_equal,
    braid_normal_form, format_braid, parse_braid, ribbon_equal,
)
