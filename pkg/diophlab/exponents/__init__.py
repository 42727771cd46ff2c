from .approximation import ValueOracle, best_records, exhaustive_records, lattice_records, shell_candidates
from .estimation import (certify_exponent, critical_points, ds_constant, ds_witnesses, estimate_lambda, estimate_uniform,
                         estimate_w, estimate_w_star, minimal_c_value, minimal_polynomial_scan, satisfies_exponent)
from .inhomogeneous import InhomogeneousOracle, first_hit, inhom_w1_hat, min_residue
from .relations import (RelationReport, corrupted_copy, estimate_suite, factor_records, mu, negative_control,
                        relation_report)
