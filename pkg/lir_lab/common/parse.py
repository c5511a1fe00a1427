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
This module holds the pyparsing grammars used to read exponents, grid
resolutions and radius sweeps from configuration documents and the command
line.
"""
from fractions import Fraction

import pyparsing as pp

from .exception import LirOperationError

_integer = pp.Word(pp.nums)
_decimal = pp.Combine(_integer + pp.Optional("." + pp.Optional(_integer)))
_rational = pp.Combine(_decimal + pp.Optional("/" + _integer))
_rational.setParseAction(lambda t: Fraction(t[0]))

_infinity = pp.CaselessKeyword("inf") | pp.CaselessKeyword("infinity") | \
    pp.Literal("∞")
_infinity.setParseAction(lambda t: [None])

EXPONENT = (_infinity | _rational) + pp.StringEnd()

_size = pp.Word(pp.nums).setParseAction(lambda t: int(t[0]))
GRID = _size + pp.ZeroOrMore(pp.Suppress(pp.oneOf("x X , *")) + _size) + \
    pp.StringEnd()

SWEEP = _rational + pp.ZeroOrMore(pp.Suppress(",") + _rational) + \
    pp.StringEnd()


def _parse(grammar, text, operation):
    try:
        return grammar.parseString(str(text).strip()).asList()
    except pp.ParseException as err:
        raise LirOperationError(operation,
                                "cannot parse '%s': %s" % (text, err))


def parse_exponent(text):
    """
    Parses an exponent written as an integer, decimal, rational or infinity.

    Args:
        text (string): "4", "2.5", "7/2", "inf" or "∞"

    Returns:
        Fraction, or None for infinity

    Example:
        parse_exponent("7/2")
    """
    return _parse(EXPONENT, text, "parse_exponent")[0]


def parse_grid(text):
    """
    Parses a grid resolution such as "32x32x32" or "128".

    Returns:
        tuple of int
    """
    return tuple(_parse(GRID, text, "parse_grid"))


def parse_sweep(text):
    """
    Parses a comma separated list of rationals, e.g. "1, 1/2, 1/4, 1/8".

    Returns:
        list of Fraction
    """
    return _parse(SWEEP, text, "parse_sweep")
