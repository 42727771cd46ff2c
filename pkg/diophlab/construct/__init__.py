from .numbers import (DEFAULT_SCHEDULE, SCHEDULES, ClassTag, ConstructedNumber, DnwClaim, build_bw,
                      build_strong_liouville, check_bw_recurrence, check_liouville_growth, convergent_residual,
                      convergent_slope, floor_pow, liouville_ratios)
from .algebraic import algebraic_cf, cbrt2, golden, periodic_cf, periodic_minimal_polynomial, sqrt2
from .spec import number_from_spec
