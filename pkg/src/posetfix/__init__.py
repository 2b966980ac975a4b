"""Fixed point properties of finite posets and their finite topological spaces."""
from .dismantle import CoreReport, beat_points, core, find_retraction, is_dismantlable
from .errors import PosetfixError, SizeLimit
from .fpp import (
    FamilyOfSelfMaps,
    FixedPointFamily,
    FppReport,
    family_to_selfmap_on_mapspace,
    fpp_with_respect_to,
    has_fpp,
    has_universal_fpp,
)
from .io import parse_poset
from .mapspace import MapPoset, compose, enumerate_maps, evaluation_is_monotone, fixed_points
from .poset import (
    FiniteSpace,
    MonotoneMap,
    Poset,
    canonical_form,
    dual,
    from_covers,
    is_connected,
    is_open,
    min_open_nbhd,
    product,
    specialization_poset,
    t0_witness_map,
    to_space,
)
from .selection import (
    SelectionMap,
    Unsat,
    criterion_family_selection,
    find_selection_map,
    iterate_selection,
    product_fixed_point,
    product_selection,
    transfer_selection_along_retract,
    verify_selection,
)

__version__ = "0.1.0"
