"""Canonical sections of a ramified p-adic cover over annuli, with exact valuation checks."""

from .calculus import NuValue, PointClass, classify, predict_w, pushforward_nu, singularity_table
from .config import RunConfig, load_config, parse_point
from .errors import CanonicalSectionError
from .halfring import HalfSeries, hs_eval, normalize
from .involution import Pairing, agrees, apply_w, check_w_branches
from .model import AnnulusPoint, DiscPoint, LocalModel, eval_pi, fiber_valuations, rescale, validate
from .padic import FieldDesc, RamElem, make_field
from .section import check_reduction, solve_section, total_section

__all__ = [
    "AnnulusPoint", "CanonicalSectionError", "DiscPoint", "FieldDesc", "HalfSeries", "LocalModel",
    "NuValue", "Pairing", "PointClass", "RamElem", "RunConfig", "agrees", "apply_w",
    "check_reduction", "check_w_branches", "classify", "eval_pi", "fiber_valuations", "hs_eval",
    "load_config", "make_field", "normalize", "parse_point", "predict_w", "pushforward_nu",
    "rescale", "singularity_table", "solve_section", "total_section", "validate",
]
