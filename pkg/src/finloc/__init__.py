"""Finite frames and locales, and a finite-category engine around them."""
from .errors import *  # noqa: F401,F403
from .lattice import (
    FinLattice,
    FinPoset,
    MonotoneMap,
    chain,
    diamond,
    left_adjoint,
    m3,
    pentagon,
    right_adjoint,
    validate_lattice,
)
from .frames import (
    Frame,
    LocalicMap,
    Sublocale,
    check_frame,
    closed_sublocale,
    diagonal,
    frame_product,
    heyting,
    is_closed_map,
    is_compact,
    is_continuous,
    is_regular,
    is_strongly_hausdorff,
    localic_maps,
    loc_colimit,
    open_sublocale,
    pseudocomplement,
    rather_below,
    sublocale_lattice,
    sublocales,
    well_below,
)
from .fincat import (
    FinCategory,
    Functor,
    find_colimit,
    find_left_adjoint,
    find_limit,
    is_final,
    validate_category,
)
from .kanengine import (
    closeable_check,
    coalgebra_category,
    coreflector,
    density_comonad,
    exponential_adjunction_check,
    fubini_check,
    internal_hom,
    is_idempotent,
)
from .kgen import density_counit_locale, idempotence_locale_check, k_diagram, product_finality_check
from .duality import FinTopSpace, duality_check, open_set_frame, points_space
from .dsl import load, parse_category, parse_frame, parse_space, parse_universe

__version__ = "0.1.0"
