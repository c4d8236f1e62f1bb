"""Exact computations with perfect complexes over weighted graded polynomial rings."""

from .errors import CertificateError, HomogeneityError, InputError, TtgError
from .fields import Field
from .rings import GradedRing, Polynomial, format_polynomial, parse_polynomial
from .groebner import (
    HomIdeal,
    groebner_basis,
    ideal_contains,
    ideal_intersection,
    ideal_quotient,
    module_syzygies,
    normal_form,
)
from .modules import (
    GradedDimensionTable,
    GradedModule,
    generic_rank,
    is_graded_free_over_quotient,
    is_zero_localized,
    local_shift_multiset,
)
from .complexes import (
    ChainMap,
    Homotopy,
    PerfectComplex,
    action_null_homotopy,
    central_action,
    cohomology,
    cone,
    direct_sum,
    even_vanishing_check,
    koszul_object,
    random_perfect_complex,
    shift,
    tensor,
    unit_complex,
    validate,
)
from .spectrum import (
    PrimePoint,
    ResidueFieldObject,
    SupportSet,
    check_local_generation,
    check_regular_sequence,
    residue_field_object,
    supp_via_residue,
    support_contains,
    support_of_module,
)
from .classify import Catalogue, SuiteReport, classify_catalogue, in_thick, run_suite

__all__ = [
    "Catalogue",
    "CertificateError",
    "ChainMap",
    "Field",
    "GradedDimensionTable",
    "GradedModule",
    "GradedRing",
    "HomIdeal",
    "HomogeneityError",
    "Homotopy",
    "InputError",
    "PerfectComplex",
    "Polynomial",
    "PrimePoint",
    "ResidueFieldObject",
    "SuiteReport",
    "SupportSet",
    "TtgError",
    "action_null_homotopy",
    "central_action",
    "check_local_generation",
    "check_regular_sequence",
    "classify_catalogue",
    "cohomology",
    "cone",
    "direct_sum",
    "even_vanishing_check",
    "format_polynomial",
    "generic_rank",
    "groebner_basis",
    "ideal_contains",
    "ideal_intersection",
    "ideal_quotient",
    "in_thick",
    "is_graded_free_over_quotient",
    "is_zero_localized",
    "koszul_object",
    "local_shift_multiset",
    "module_syzygies",
    "normal_form",
    "parse_polynomial",
    "random_perfect_complex",
    "residue_field_object",
    "run_suite",
    "shift",
    "supp_via_residue",
    "support_contains",
    "support_of_module",
    "tensor",
    "unit_complex",
    "validate",
]
