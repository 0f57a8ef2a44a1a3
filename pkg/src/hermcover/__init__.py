"""Elementary abelian p-covers of the Hermitian curve: exact computations over
finite fields for the curves L(x)^(q+1) + L(y)^(q+1) + c = 0."""

__version__ = "0.1.0"

from .gf import GF, FieldElement, FieldTooLarge, field, make_tower
from .poly import BiPoly, LinearizedPoly, MPoly, pseudo_reduce
from .curve import (CurveFamilyParams, PlaneCurve, build_cn, build_cn_prime, closed_form_report,
                    count_places, genus_closed_form, load_curve_spec, p_rank_closed_form, parse_curve_spec,
                    singular_locus)

__all__ = [
    "GF", "FieldElement", "FieldTooLarge", "field", "make_tower",
    "BiPoly", "LinearizedPoly", "MPoly", "pseudo_reduce",
    "CurveFamilyParams", "PlaneCurve", "build_cn", "build_cn_prime", "closed_form_report",
    "count_places", "genus_closed_form", "load_curve_spec", "p_rank_closed_form", "parse_curve_spec",
    "singular_locus",
]
