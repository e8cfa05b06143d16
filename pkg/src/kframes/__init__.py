"""Finite Kripke-frame workbench: constructions, formulas, morphisms, tuned partitions."""

from .checkers import (CheckResult, PreconditionError, alpha_strip, check_church_rosser,
                       check_commutativity, check_mckinsey, check_opposite_arrows, check_RP,
                       check_rp_semantic_poly, find_irreducible_path, is_irreducible_path,
                       least_rp_index, least_rp_poly_index, mixed_relation,
                       rectangle_quotient_check, terminal_points, zigzag_path)
from .constructions import (Equivalence, FrameFamily, antichain, chain, clone_world, cluster,
                            disjoint_union, gap_cluster, lift_bimodal, point, product,
                            productivize, quotient, rectangle, saw, semi_ordered_sum, sum_over,
                            tack1, tack2)
from .errors import (AlphabetError, BudgetExceeded, ExpressionError, FormulaSyntaxError,
                     FrameError)
from .frame import (Alphabet, Frame, Partition, Relation, closure_leq, clusters, compose,
                    generated_subframe, height, is_point_generated, max_cluster_size,
                    pretransitivity_index, restrict, skeleton, star, union_of, union_relation)
from .morphisms import (MorphismSearch, MorphismVerdict, WorldMap, find_p_morphism,
                        is_isomorphic, is_onto_p_morphism, is_p_morphism, is_surjective)
from .tuning import (TuningReport, TuningVerdict, coarsest_tuned_refinement, is_tuned,
                     product_refine_with_finite, tunability_profile)

__version__ = "0.1.0"
