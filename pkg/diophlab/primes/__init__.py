from .filter import (FilterInstance, bad_primes, bad_primes_oracle, combine, find_good_prime, irreducible_combination,
                     is_bad_prime, theorem_bound)
from .corpus import (COUNT_CONSTANT, build_corpus, calibrate_count_constant, check_corpus, count_ratio, count_scale,
                     random_instance)
