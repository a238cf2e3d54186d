"""Exact computations on the rotation-number ziggurat of a two-letter word."""

from .exact import Rational, farey_sequence, mediant, min_den_fraction_in, parse_rational
from .rotnum import is_realizable, rot_interval, rot_max, rot_max_certificate, rot_min
from .boxes import Box, CwBoxParams, enumerate_cw, enumerate_good, find_good_cover
from .fractal import classify_parent, delta, delta_prime, vertices_jn, vertices_rab
from .dynamics import MonotoneLift, compose, max_composition, rotation_number
from ._kernels import BACKEND

__version__ = "0.1.0"
