"""Exact-arithmetic enumeration and classification of 4-cylinder
Weierstrass eigenform prototypes in genus four."""

__version__ = "0.1.0"

from .exact import Surd, discriminants, exact_sqrt, is_discriminant, lam
from .prototype import (Prototype, classify_model, enumerate_prototypes,
                        invariant_class, proto, reduced_prototype)
from .moves import INF, butterfly, butterfly_qs, f_move, switch
from .components import (component_partition, orbit_count, orbit_graph,
                         square_tiled_orbits, verify_pd_theorem,
                         verify_sd_theorem)
from .strategies import STRATEGIES, range_sets, strategy_applies, \
    strategy_scan, walk_to_T
from .surface import (build_prototype_surface, build_two_cylinder_st,
                      extract_prototype, trace_direction)

__all__ = [
    "Surd", "discriminants", "exact_sqrt", "is_discriminant", "lam",
    "Prototype", "classify_model", "enumerate_prototypes",
    "invariant_class", "proto", "reduced_prototype",
    "INF", "butterfly", "butterfly_qs", "f_move", "switch",
    "component_partition", "orbit_count", "orbit_graph",
    "square_tiled_orbits", "verify_pd_theorem", "verify_sd_theorem",
    "STRATEGIES", "range_sets", "strategy_applies", "strategy_scan",
    "walk_to_T",
    "build_prototype_surface", "build_two_cylinder_st",
    "extract_prototype", "trace_direction",
]
