"""Torus-covering T^2-links: link groups, quandle cocycle invariants, triple points."""

from .braids import (BraidError, BraidWord, GeneratorImages, Permutation, artin,
                     braids_equal, commute, garside_delta, parse_braid, permutation_of,
                     torus_pair)
from .charts import (MovieEvent, SearchLimits, TorusChartMovie, WhiteVertexRecord,
                     boltzmann_weight, build_movie, cocycle_invariant, color_action,
                     enumerate_colorings, validate_movie, white_vertices)
from .groups import (AbelianInvariants, GroupPresentation, abelianization,
                     certify_free_abelian, link_group)
from .quandles import (Cocycle3, LaurentPoly, Quandle, theta_x, theta_z, trivial_quandle,
                       validate_cocycle, validate_quandle)
from .rewriting import RewriteSystem, knuth_bendix
from .triple_points import certify_lower_bound, classify_type, pairing_consistent

__version__ = "0.1.0"
