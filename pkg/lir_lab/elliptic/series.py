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
This module solves D u = omega on a small ball by extending omega off the
ball so that it becomes orthogonal to the harmonic space.

With h_0 = P(omega 1_B) the series
    omega_{k+1} = 1_{B^c} sum_j h^k_j e_j,   h_{k+1} = h_k - P(omega_{k+1})
contracts by max_j ||e_j 1_B||^2 K <= 1/16 per step, and
omega' = omega 1_B - sum_k omega_k is orthogonal to every e_j while
agreeing with omega on B.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..common.exception import BallTooLarge, NoConvergence
from .harmonic import harmonic_basis
from .solve import min_norm_solve

log = logging.getLogger(__name__)

STOP_RTOL = 1e-10
MAX_TERMS = 64
PROJECTION_RTOL = 1e-9


@dataclass
class SeriesResult:
    extended: object
    solution: object
    global_solution: object
    smallness: float
    trace: list = field(default_factory=list)

    @property
    def iterations(self):
        return max(len(self.trace) - 1, 0)


def local_series_solve(operator, omega, mask, basis=None):
    """
    Extends omega from the ball to omega' orthogonal to ker D* and solves.

    Args:
        operator (EllipticOperator)
        omega (GridSection): data, only its values on the ball are used
        mask (ndarray of bool): nodes of the ball B
        basis (HarmonicBasis): computed if None

    Returns:
        SeriesResult with omega', u restricted to B, the global solution,
        the measured max_j ||e_j 1_B|| and the trace of ||h_k||

    Raises:
        BallTooLarge: if max_j ||e_j 1_B|| > 1 / (4 sqrt(K))
        NoConvergence: if the extension keeps a harmonic component

    Example:
        local_series_solve(D, omega, Ball((0, 0), 0.3).mask(metric))
    """
    basis = basis if basis is not None else harmonic_basis(operator)
    mask = np.asarray(mask, dtype=bool)
    inside = omega.restrict(mask)
    count = len(basis)
    if count:
        smallness = max(e.restrict(mask).norm() for e in basis)
        if smallness > 1.0 / (4.0 * math.sqrt(count)):
            raise BallTooLarge("local_series_solve",
                               "max_j ||e_j 1_B|| = %.4g exceeds "
                               "1/(4 sqrt(%d))" % (smallness, count),
                               measured=smallness)
    else:
        smallness = 0.0

    coeffs = basis.coefficients(inside) if count else np.zeros(0)
    h0 = float(np.linalg.norm(coeffs))
    trace = [{"k": 0, "h_norm": h0, "bound": h0}]
    total = np.zeros_like(coeffs)
    scale = omega.norm()
    if count and h0 > 1e-14 * max(scale, np.finfo(float).tiny):
        # coefficients of P(1_{B^c} e_j): G_ij = <1_{B^c} e_j, e_i>
        outside = [e.restrict(~mask) for e in basis]
        gram = np.array([[outside[j].inner(basis[i]) for j in range(count)]
                         for i in range(count)])
        h = coeffs
        for k in range(1, MAX_TERMS + 1):
            total = total + h
            h = h - gram @ h
            norm = float(np.linalg.norm(h))
            trace.append({"k": k, "h_norm": norm,
                          "bound": h0 * 4.0 ** (-k)})
            if norm <= STOP_RTOL * h0:
                break
        log.debug("series extension: %d terms, final ||h|| %.3g",
                  len(trace) - 1, trace[-1]["h_norm"])

    extension = inside.zeros_like()
    for j, e in enumerate(basis):
        if total.size and total[j] != 0:
            extension = extension + e.restrict(~mask) * total[j]
    extended = inside - extension

    if count:
        leftover = float(np.linalg.norm(basis.coefficients(extended)))
        if leftover > PROJECTION_RTOL * max(scale, np.finfo(float).tiny):
            raise NoConvergence("local_series_solve",
                                "||P omega'|| = %.3g after %d terms"
                                % (leftover, len(trace) - 1),
                                history=[row["h_norm"] for row in trace])
    solution = min_norm_solve(operator, extended, basis)
    return SeriesResult(extended=extended, solution=solution.restrict(mask),
                        global_solution=solution, smallness=smallness,
                        trace=trace)
