"""Exact computations on toric varieties.

torix works directly with fans: primitive ray generators and maximal cones
given by ray indices. From that data it computes class groups, Cartier data,
degrees on invariant curves, positivity of line bundles and sheaf cohomology
of ``O(D)`` and ``Omega^j(D)``. All arithmetic is over the integers and the
rationals; nothing is rounded.

Several classical statements are run as cross-checks between independent
code paths: global generation against nefness, strict convexity against
ampleness, the Cech engine against the negative-ray complex, and so on.
A failed cross-check raises :class:`TheoremViolation`.

>>> from torix import projective_space, cohomology_table
>>> cohomology_table(projective_space(2), (2, 0, 0)).dims
(6, 0, 0)
"""

from .errors import (DegenerateFanError, FanError, NotCartierError, NotCompleteError, NotSmoothError,
                     PreconditionError, TheoremViolation, TorixError)
from .fan import (Cone, Fan, Wall, is_complete, is_projective_space, is_simplicial, is_smooth, lattice_index,
                  primitive, quotient_map, singular_cones, star_fan, star_fan_data, star_subdivision,
                  validate_fan, walls)
from .corpus import hirzebruch, product, projective_space, random_smooth_blowup_tower, weighted_projective_plane
from .divisors import (CartierData, ClassGroup, Divisor, DivisorClass, DivisorPolytope, canonical_divisor,
                       cartier_data, class_group, is_cartier, is_convex, is_principal, is_strictly_convex,
                       lattice_points, linearly_equivalent, polytope, prime_divisor, principal_divisor,
                       q_cartier_index, round_down, round_up, support_function_eval)
from .intersection import (WallDegree, is_refinement, min_curve_degree, pullback, restrict_to_divisor,
                           wall_curve_degree, wall_degrees)
from .positivity import (FujitaVerdict, Outcome, PositivityProfile, adjoint_check,
                         ample_minus_divisor_obstruction, base_locus_curves, fujita_global_generation,
                         fujita_very_ample, induction_step_check, is_ample, is_big, is_globally_generated,
                         is_nef, is_very_ample, nef_big_factorization, positivity_profile,
                         two_divisor_gg_obstruction)
from .cohomology import (CohomologyTable, cech_degree_piece, cohomology_table, frobenius_split_dims,
                         kawamata_viehweg_check, local_cohomology_S, negative_ray_piece, negative_ray_table,
                         serre_duality_check, sign_normalize, vanishing_audit)
from .omega import EulerPresentation, euler_presentation, hodge_numbers, omega_cohomology, omega_degree_piece, omega_table
from .blowup import blow_up_along, run_surjectivity
from .io import emit_fan, parse_divisor, parse_fan, read_fan, run_corpus, write_fan

__version__ = "0.1.0"
