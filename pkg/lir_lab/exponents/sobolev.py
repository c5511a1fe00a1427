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
This module does the exact Sobolev exponent arithmetic: S_k(r), the chain
t_j = S_{jm}(2) and the bound on the number of regularity steps.

Exponents are Fractions; +infinity is an explicit marker, never a float.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from ..common.exception import ChainExhausted, LirOperationError
from ..common.utils import format_fraction, to_fraction


@dataclass(frozen=True)
class ExtendedExponent:
    """A positive rational exponent, or +infinity when ``value`` is None."""
    value: Fraction = None

    @property
    def is_infinite(self):
        return self.value is None

    @property
    def reciprocal(self):
        return Fraction(0) if self.value is None else 1 / self.value

    def __lt__(self, other):
        other = as_exponent(other)
        if self.is_infinite:
            return False
        return other.is_infinite or self.value < other.value

    def __le__(self, other):
        other = as_exponent(other)
        return self == other or self < other

    def __gt__(self, other):
        return as_exponent(other) < self

    def __ge__(self, other):
        return as_exponent(other) <= self

    def __float__(self):
        return math.inf if self.value is None else float(self.value)

    def __str__(self):
        return format_fraction(self.value)


INFINITY = ExtendedExponent(None)


def as_exponent(value):
    """Accepts an ExtendedExponent, number, Fraction or string."""
    if isinstance(value, ExtendedExponent):
        return value
    return ExtendedExponent(to_fraction(value))


def sobolev_exponent(r, k, n):
    """
    Sobolev exponent S_k(r) defined by 1/S_k(r) = 1/r - k/n.

    Args:
        r (ExtendedExponent or number): finite, r > 0
        k (int): k >= 0
        n (int): dimension, n >= 1

    Returns:
        ExtendedExponent, infinite when 1/r - k/n <= 0

    Example:
        sobolev_exponent(2, 1, 3)  # 6
    """
    r = as_exponent(r)
    if r.is_infinite or r.value <= 0:
        raise LirOperationError("sobolev_exponent",
                                "r must be finite and positive, got %s" % r)
    if k < 0 or n < 1:
        raise LirOperationError("sobolev_exponent",
                                "need k >= 0 and n >= 1, got k=%s n=%s"
                                % (k, n))
    recip = 1 / r.value - Fraction(k, n)
    if recip <= 0:
        return INFINITY
    return ExtendedExponent(1 / recip)


@dataclass(frozen=True)
class ExponentChain:
    """t_0 = 2 < t_1 < ... up to the first infinite term, and the index l
    with t_{l-1} <= r < t_l."""
    n: int
    m: int
    r: ExtendedExponent
    terms: tuple
    l: int

    def t(self, j):
        if j < len(self.terms):
            return self.terms[j]
        return INFINITY

    @property
    def steps(self):
        return self.l


def chain_term(n, m, j):
    """t_j = S_{jm}(2), i.e. 1/t_j = 1/2 - jm/n."""
    return sobolev_exponent(2, j * m, n)


def exponent_chain(n, m, r):
    """
    Builds the exponent chain and selects l.

    Args:
        n (int): dimension
        m (int): operator order
        r (number or ExtendedExponent): r >= 2, finite

    Returns:
        ExponentChain

    Raises:
        ChainExhausted: if r < 2 or r is infinite

    Example:
        exponent_chain(3, 1, 3).l  # 1, chain (2, 6, inf)
    """
    r = as_exponent(r)
    if r.is_infinite:
        raise ChainExhausted("exponent_chain",
                             "no finite t_(l-1) <= r < t_l for r = inf")
    if r.value < 2:
        raise ChainExhausted("exponent_chain",
                             "the chain starts at 2, got r = %s" % r)
    terms = []
    j = 0
    while True:
        t = chain_term(n, m, j)
        terms.append(t)
        if t.is_infinite:
            break
        j += 1
    l = next(i for i, t in enumerate(terms) if r < t)
    return ExponentChain(n=int(n), m=int(m), r=r, terms=tuple(terms), l=l)


def step_bound(r, s, tau):
    """
    Upper bound on the number of regularity steps, the largest integer not
    exceeding 1 + (1/tau) (r - s) / (2 s).

    Args:
        r, s (number): r >= s > 1
        tau (number): exponent gain per step, tau > 0

    Returns:
        int

    Example:
        step_bound(6, 2, Fraction(1, 3))  # 4
    """
    r, s, tau = to_fraction(r), to_fraction(s), to_fraction(tau)
    if r is None or s is None or tau is None:
        raise LirOperationError("step_bound", "arguments must be finite")
    if not (r >= s > 1 and tau > 0):
        raise LirOperationError("step_bound",
                                "need r >= s > 1 and tau > 0")
    return math.floor(1 + (r - s) / (2 * s * tau))


def simulate_steps(r, s, tau):
    """
    Number of steps k of 1/t_k = 1/s - k tau needed to reach t_k >= r.
    """
    r, s, tau = to_fraction(r), to_fraction(s), to_fraction(tau)
    k = 0
    t = ExtendedExponent(s)
    target = ExtendedExponent(r)
    while t < target:
        k += 1
        recip = 1 / s - k * tau
        t = INFINITY if recip <= 0 else ExtendedExponent(1 / recip)
    return k
