"""Groebner-basis ideal engine."""

from .groebner import (
    GREVLEX,
    LEX,
    BudgetExceeded,
    GroebnerConfig,
    GroebnerStats,
    MonomialOrder,
    configured,
    current_config,
    elimination_order,
)
from .ideal import (
    Ideal,
    ProjectiveProfile,
    eliminate,
    groebner_basis,
    intersect,
    normal_form,
    proj_profile,
    radical_member,
    saturate,
)
from .points import (
    DegenerateSectionError,
    PositiveDimensionalError,
    count_distinct_points,
    count_distinct_points_detailed,
    generic_section,
    rational_points_projective,
    reduced_top_degree,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "BudgetExceeded",
    "DegenerateSectionError",
    "GroebnerConfig",
    "GroebnerStats",
    "Ideal",
    "MonomialOrder",
    "PositiveDimensionalError",
    "ProjectiveProfile",
    "configured",
    "count_distinct_points",
    "count_distinct_points_detailed",
    "current_config",
    "eliminate",
    "elimination_order",
    "generic_section",
    "groebner_basis",
    "intersect",
    "normal_form",
    "proj_profile",
    "radical_member",
    "rational_points_projective",
    "reduced_top_degree",
    "saturate",
]
