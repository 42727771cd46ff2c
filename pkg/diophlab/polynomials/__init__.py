from .intpoly import IntPoly, gelfond_ratio, product
from .roots import has_linear_factor, isolate_real_roots, rational_roots, refine_root, squarefree_part
from .irreducible import brute_force_factor, factor_height_bound, is_irreducible, sympy_is_irreducible
from .witness import AlgebraicWitness, nearest_root, real_roots, root_distance, witness_convert
from .pairs import coprime, coprime_corpus, coprime_value_bounds, gelfond_exhaustive, height_bracket, resultant_constants
