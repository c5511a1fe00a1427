# Copyright 2026 The lir_lab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
This module provides common utility functions for the lir_lab.
"""
import math
from fractions import Fraction
from numbers import Integral, Real

import numpy as np

from .parse import parse_exponent


def to_fraction(value):
    """
    Converts an int, float, Fraction or string to an exact Fraction.

    Floats go through their shortest repr, so 0.1 becomes 1/10. Infinity
    (float or string) maps to None.
    """
    if value is None or isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Real):
        if math.isinf(value):
            return None
        return Fraction(repr(float(value)))
    return parse_exponent(value)


def format_fraction(value):
    if value is None:
        return "inf"
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def make_rng(seed):
    return np.random.default_rng(seed)


def flat_index(shape, node):
    return int(np.ravel_multi_index(tuple(int(i) for i in node), shape))


def node_of(shape, index):
    return tuple(int(i) for i in np.unravel_index(int(index), shape))


def relative_error(value, reference):
    scale = max(abs(reference), np.finfo(float).tiny)
    return abs(value - reference) / scale
