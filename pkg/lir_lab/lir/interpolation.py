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
Weight domination between interpolation levels: with R <= 1 and
alpha_j <= beta_j,

    ||omega||_{L^t_j(M, R^beta_j)} <= ||omega||_{L^t_j(M, R^alpha_j)}

holds pointwise and is asserted. The interpolation bound
||omega||_{L^t_j(R^alpha_j)} <= C max(||omega||_{L^t_k(R^alpha_k)},
||omega||_{L^2}) is only measured.
"""
import logging
from dataclasses import dataclass, field

from ..common.utils import format_fraction
from ..exponents.sobolev import chain_term
from ..exponents.weights import ALPHA_J, BETA_J, interpolation_exponents, \
    weight_field, weight_spec
from ..fields.norms import lp_norm

log = logging.getLogger(__name__)

TOLERANCE = 1e-12


@dataclass
class InterpolationReport:
    n: int
    m: int
    k: int
    rows: list = field(default_factory=list)

    @property
    def passed(self):
        return all(row["holds"] for row in self.rows)

    @property
    def max_ratio(self):
        return max((row["interpolation_ratio"] for row in self.rows),
                   default=0.0)

    def as_dict(self):
        return {"n": self.n, "m": self.m, "k": self.k,
                "passed": self.passed, "max_ratio": self.max_ratio,
                "tolerance": TOLERANCE, "rows": self.rows}


def verify_interpolation_weights(omega, radius_field, n, m, k):
    """
    Compares the beta_j and alpha_j weighted norms of omega for j = 1..k.

    Args:
        omega (GridSection)
        radius_field (AdmissibleRadiusField): values in (0, 1]
        n, m (int): dimension and order fixing t_j = S_jm(2); n need not
                    match the grid dimension
        k (int): top level with t_k finite

    Returns:
        InterpolationReport

    Raises:
        InfiniteExponent: from interpolation_exponents

    Example:
        verify_interpolation_weights(omega, field, 8, 1, 2).passed  # True
    """
    metric = radius_field.metric
    t_k = float(chain_term(n, m, k))
    top = lp_norm(omega, t_k, metric=metric, weight=weight_field(
        weight_spec(ALPHA_J, n, m, j=k, k=k), radius_field)).value
    energy = lp_norm(omega, 2, metric=metric).value
    report = InterpolationReport(n=n, m=m, k=k)
    for j in range(1, k + 1):
        theta, _, _ = interpolation_exponents(n, m, k, j)
        alpha = weight_spec(ALPHA_J, n, m, j=j, k=k)
        beta = weight_spec(BETA_J, n, m, j=j, k=k)
        t_j = float(chain_term(n, m, j))
        lhs = lp_norm(omega, t_j, metric=metric,
                      weight=weight_field(beta, radius_field)).value
        rhs = lp_norm(omega, t_j, metric=metric,
                      weight=weight_field(alpha, radius_field)).value
        bound = max(top, energy)
        report.rows.append({
            "j": j, "theta": format_fraction(theta),
            "alpha": format_fraction(alpha.exponent),
            "beta": format_fraction(beta.exponent),
            "t_j": t_j, "lhs": lhs, "rhs": rhs,
            "holds": lhs <= rhs * (1.0 + TOLERANCE),
            "interpolation_ratio": rhs / bound if bound > 0 else 0.0})
    log.info("interpolation weights n=%d m=%d k=%d: passed %s, max ratio "
             "%.3g", n, m, k, report.passed, report.max_ratio)
    return report
