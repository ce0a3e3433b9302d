"""Exact and numerical tools for intersections of real flag manifolds."""

from .errors import ClusteringAmbiguity, DomainError, NumericallyMarginal
from .exact import ExactVector
from .rootsys import (
    RootSystem,
    build_root_system,
    complementary_and_t_roots,
    reflect,
    restricted_root_system,
    weyl_orbit,
)
from .flags import (
    BasePoint,
    IntersectionResult,
    catalogue_entry,
    congruent_intersection,
    matsuki_doubling,
    maximal_antipodal,
    noncongruent_intersection,
    tightness_count,
)
from .triads import (
    AffineIsometry,
    CellData,
    PiPoint,
    SymmetricTriad,
    affine_generators,
    check_axioms,
    direct_sum,
    fundamental_cell,
    gamma_contains,
    is_regular,
    span_property,
    st_point,
)

__all__ = [
    "AffineIsometry",
    "BasePoint",
    "CellData",
    "ClusteringAmbiguity",
    "DomainError",
    "ExactVector",
    "IntersectionResult",
    "NumericallyMarginal",
    "PiPoint",
    "RootSystem",
    "SymmetricTriad",
    "affine_generators",
    "build_root_system",
    "catalogue_entry",
    "check_axioms",
    "complementary_and_t_roots",
    "congruent_intersection",
    "direct_sum",
    "fundamental_cell",
    "gamma_contains",
    "is_regular",
    "matsuki_doubling",
    "maximal_antipodal",
    "noncongruent_intersection",
    "reflect",
    "restricted_root_system",
    "span_property",
    "st_point",
    "tightness_count",
    "weyl_orbit",
]
