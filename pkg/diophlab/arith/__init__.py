from .interval import Interval, Rational, as_rational, ceil_fraction, floor_fraction, horner
from .continued_fraction import CFNumber, convergent, enclose, eval_poly
from .logs import log_base, log_interval, neg_log_slope, sqrt_interval, to_float
