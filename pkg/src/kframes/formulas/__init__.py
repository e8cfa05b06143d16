from .schemes import (box_all, box_leq, decolor, dia_all, dia_leq, gen_B, gen_chr, gen_com,
                      gen_gap_formula, gen_opposite_arrows, gen_pretrans, gen_relativized_symmetry,
                      gen_rp, gen_rp_prod, gen_rp_uni, gen_saw_axioms, gen_saw_phi,
                      gen_tack1_refuted, gen_tack2_axioms, gen_tack_mc, gen_tl_cr,
                      product_diamond, translate_pretrans, translate_product)
from .semantics import (DEFAULT_BUDGET, ValidityResult, Valuation, evaluate, truth_vector,
                        valid_on_frame)
from .syntax import (BOT, TOP, And, Bot, Box, Dia, Formula, Imp, Not, Or, Var, conj, disj,
                     labels, parse, to_text, variables)
