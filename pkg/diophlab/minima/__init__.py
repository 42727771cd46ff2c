from .bodies import DUAL, KINDS, SIMULTANEOUS, BaseBody, DualBody, Enclosures, SimultaneousBody, make_body
from .successive import MinimaResult, is_independent, minkowski_bracket, successive_minima
from .parametric import (DEFAULT_QGRID, TRAJECTORY_HEADER, ParametricMinima, exponent_from_trajectory,
                         independent_dimension, mahler_constant, mahler_gap, psi, psi_range, psi_star)
