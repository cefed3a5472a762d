from .collapse import Certificate, Inconclusive, certify_contractible, replay
from .cusps import CuspClass, CuspLoopError, cusp_restriction_class
from .levelset import FiberComplex, RegularValueError, level_set, primitive_lift
from .links import LinkComplex, ascending_link, descending_link, vertex_link
from .plmap import MorseError, PLMap, build_pl_map, verify_morse
from .subdivision import FamilyViolation, MixedComplex, SubdivisionError, find_bad_families, subdivide

__all__ = [
    "Certificate", "Inconclusive", "certify_contractible", "replay",
    "CuspClass", "CuspLoopError", "cusp_restriction_class",
    "FiberComplex", "RegularValueError", "level_set", "primitive_lift",
    "LinkComplex", "ascending_link", "descending_link", "vertex_link",
    "MorseError", "PLMap", "build_pl_map", "verify_morse",
    "FamilyViolation", "MixedComplex", "SubdivisionError", "find_bad_families", "subdivide",
]
