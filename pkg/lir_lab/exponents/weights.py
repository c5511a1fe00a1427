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
This module builds the radius weights attached to the weighted norms and the
interpolation exponents.

Two weights share the letter w in the literature. Here ``w_l`` is the
weight R^(l m t_(l-1)) of the global L^(t_(l-1)) data term and ``w_j`` is
R^((l+1-j) m), the weight of the j-th data term in the covering-sum form.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..common.exception import InfiniteExponent, LirOperationError
from ..common.utils import format_fraction
from .sobolev import chain_term, exponent_chain

W_L = "w_l"
V_R = "v_r"
V_R_PRIME = "v_r_prime"
V_R_BALL = "v_r_ball"
W_J = "w_j"
ALPHA_J = "alpha_j"
BETA_J = "beta_j"


@dataclass(frozen=True)
class WeightSpec:
    """
    Exponent of R(x) and the norm it weights.

    ``as_density`` tells whether the weight multiplies the measure
    (int |f|^p R^e dv) or the integrand before the power
    (int |f R^e|^p dv).
    """
    name: str
    exponent: Fraction
    norm: str
    as_density: bool = True

    def __str__(self):
        return "%s = R^%s on %s" % (self.name, format_fraction(self.exponent),
                                    self.norm)


def _ratio(r, t):
    """r / t with r / inf = 0."""
    return Fraction(0) if t.is_infinite else r / t.value


def weight_spec(name, n, m, r=None, j=None, k=None):
    """
    Returns the WeightSpec ``name`` for the chain of (n, m, r).

    Args:
        name (string): one of ["w_l", "v_r", "v_r_prime", "v_r_ball", "w_j",
                       "alpha_j", "beta_j"]
        n, m (int): dimension and operator order
        r (number): r >= 2; unused by alpha_j and beta_j
        j (int): data-term index, 1 <= j <= l (w_j), or interpolation
                 level 1 <= j <= k (alpha_j, beta_j)
        k (int): top interpolation level (alpha_j, beta_j only)

    Returns:
        WeightSpec

    Example:
        weight_spec("v_r", 6, 2, 3).exponent  # 35/2
        weight_spec("beta_j", 8, 1, j=1, k=2).exponent  # 16/3
    """
    if name in (ALPHA_J, BETA_J):
        if j is None or k is None:
            raise LirOperationError("weight_spec",
                                    "%s needs both j and k" % name)
        _, alpha, beta = interpolation_exponents(n, m, k, j)
        return WeightSpec(name, alpha if name == ALPHA_J else beta,
                          "L^%s" % chain_term(n, m, j))
    if r is None:
        raise LirOperationError("weight_spec", "%s needs r" % name)
    chain = exponent_chain(n, m, r)
    l, rr = chain.l, chain.r.value
    t_l = chain.t(l)
    if name == W_L:
        return WeightSpec(W_L, l * m * chain.t(l - 1).value,
                          "L^%s" % chain.t(l - 1))
    if name in (V_R, V_R_PRIME):
        exponent = (_ratio(rr, t_l) - 1) + (l + 2) * m * rr
        norm = "L^%s" % chain.r if name == V_R else \
            "W^{%d,%s}" % (m, chain.r)
        return WeightSpec(name, exponent, norm)
    if name == V_R_BALL:
        exponent = (t_l.reciprocal - 1 / rr) + (l + 1) * m
        return WeightSpec(V_R_BALL, exponent, "L^%s" % chain.r,
                          as_density=False)
    if name == W_J:
        if j is None or not 1 <= j <= l:
            raise LirOperationError("weight_spec",
                                    "w_j needs 1 <= j <= l = %d" % l)
        return WeightSpec(W_J, Fraction((l + 1 - j) * m),
                          "L^%s" % chain.t(l - j), as_density=False)
    raise LirOperationError("weight_spec", "unknown weight '%s'" % name)


def interpolation_exponents(n, m, k, j):
    """
    Interpolation parameter and the weight exponents of the j-th level.

    Args:
        n, m (int): dimension and operator order
        k (int): top level, k >= 1
        j (int): 1 <= j <= k

    Returns:
        (theta, alpha_j, beta_j): Fractions with theta = j / k,
        alpha_j = ((k+1)/k) m j t_j and beta_j = (j+1) m t_j

    Raises:
        InfiniteExponent: if t_j or t_k is infinite

    Example:
        interpolation_exponents(8, 1, 2, 1)  # (1/2, 4, 16/3)
    """
    if not 1 <= j <= k:
        raise LirOperationError("interpolation_exponents",
                                "need 1 <= j <= k, got j=%d k=%d" % (j, k))
    t_j = chain_term(n, m, j)
    t_k = chain_term(n, m, k)
    if t_j.is_infinite or t_k.is_infinite:
        raise InfiniteExponent("interpolation_exponents",
                               "t_%d = %s, t_%d = %s" % (j, t_j, k, t_k))
    theta = Fraction(j, k)
    alpha = Fraction(k + 1, k) * m * j * t_j.value
    beta = (j + 1) * m * t_j.value
    assert alpha <= beta
    return theta, alpha, beta


def weight_field(spec, radius_field):
    """
    Pointwise R(x)^exponent.

    Args:
        spec (WeightSpec or Fraction): the weight, or its bare exponent
        radius_field (AdmissibleRadiusField)

    Returns:
        ndarray shaped like the grid, in (0, 1] for nonnegative exponents

    Example:
        weight_field(weight_spec("v_r", 3, 1, 4), field)
    """
    exponent = spec.exponent if isinstance(spec, WeightSpec) else spec
    if exponent is None:
        raise InfiniteExponent("weight_field", "exponent is infinite")
    values = np.asarray(radius_field.values, dtype=float)
    if exponent == 0:
        return np.ones_like(values)
    return values ** float(exponent)


def exponent_table(n, m, r):
    """
    Rows describing the chain and the weights of (n, m, r), ready for CSV.
    """
    chain = exponent_chain(n, m, r)
    rows = []
    for j, t in enumerate(chain.terms):
        rows.append({"quantity": "t_%d" % j, "value": str(t),
                     "note": "l" if j == chain.l else ""})
    for name in (W_L, V_R, V_R_PRIME, V_R_BALL):
        spec = weight_spec(name, n, m, r)
        rows.append({"quantity": name,
                     "value": format_fraction(spec.exponent),
                     "note": spec.norm})
    for j in range(1, chain.l + 1):
        spec = weight_spec(W_J, n, m, r, j=j)
        rows.append({"quantity": "w_%d" % j,
                     "value": format_fraction(spec.exponent),
                     "note": spec.norm})
    return chain, rows
