from app.qforms.forms import (
    DiagonalForm,
    LocalProfile,
    NormalizedForm,
    almost_all_rank2_decide,
    decide_omitting_place,
    failing_places,
    find_isotropic_vector,
    global_represents_zero,
    is_local_square,
    local_profile,
    local_represents_zero,
    normalize,
    primitive_vector,
    relevant_places,
    represents_zero_mod,
)
from app.qforms.hilbert import hilbert_symbol, hilbert_symbol_bruteforce
from app.qforms.places import REAL_PLACE, Place

__all__ = [
    "DiagonalForm",
    "LocalProfile",
    "NormalizedForm",
    "Place",
    "REAL_PLACE",
    "almost_all_rank2_decide",
    "decide_omitting_place",
    "failing_places",
    "find_isotropic_vector",
    "global_represents_zero",
    "hilbert_symbol",
    "hilbert_symbol_bruteforce",
    "is_local_square",
    "local_profile",
    "local_represents_zero",
    "normalize",
    "primitive_vector",
    "relevant_places",
    "represents_zero_mod",
]
