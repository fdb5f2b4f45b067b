"""Exact motivic zeta functions from resolution data, with a finite-field jet oracle."""

from .errors import DatasetError, IncompleteData, MotzetaError, NoLimit, ParseError
from .grring import GrElement, StratumSymbol, gr_add, gr_forget, gr_reduce, gr_scale, gr_specialize, measure_cylinder
from .jets import count_contact_loci, count_greenberg, crosscheck_series, mu_action_check, ordjac_counts
from .laurent import LaurentPoly
from .polynomial import Polynomial
from .render import render
from .resolution import (
    Divisor,
    ResolutionData,
    Stratum,
    blowup,
    bundled,
    is_X0_linear,
    load_resolution,
    reduced_fiber_class,
    validate,
)
from .series import RationalSeries, limit_T_infinity, rs_equal, specialize_pointcount, substitute_scaled
from .zeta import (
    compare_weil_zeta,
    local_singular_series,
    motivic_volume,
    nearby_cycles,
    serre_invariant,
    serre_series,
    volume_series,
    zeta_equivariant,
    zeta_naive,
)

__all__ = [
    "blowup",
    "bundled",
    "compare_weil_zeta",
    "count_contact_loci",
    "count_greenberg",
    "crosscheck_series",
    "DatasetError",
    "Divisor",
    "gr_add",
    "gr_forget",
    "gr_reduce",
    "gr_scale",
    "gr_specialize",
    "GrElement",
    "IncompleteData",
    "is_X0_linear",
    "LaurentPoly",
    "limit_T_infinity",
    "load_resolution",
    "local_singular_series",
    "measure_cylinder",
    "motivic_volume",
    "MotzetaError",
    "mu_action_check",
    "nearby_cycles",
    "NoLimit",
    "ordjac_counts",
    "ParseError",
    "Polynomial",
    "RationalSeries",
    "reduced_fiber_class",
    "render",
    "ResolutionData",
    "rs_equal",
    "serre_invariant",
    "serre_series",
    "specialize_pointcount",
    "Stratum",
    "StratumSymbol",
    "substitute_scaled",
    "validate",
    "volume_series",
    "zeta_equivariant",
    "zeta_naive",
]
