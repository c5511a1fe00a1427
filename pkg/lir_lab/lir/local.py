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
This module checks the local elliptic estimate on balls, its higher order
chain and the local existence estimate of the series solver.

The local estimate on B = B(x, R), B^1 = B(x, R/2) reads

    ||u||_{W^{m,r}(B^1)} <= c_1 ||Du||_{L^r(B)} + c_2 R^-m ||u||_{L^r(B)}

and the chain of order k adds one term per derivative of Du:

    ||u||_{W^{m+k,r}(B^1)} <= sum_{j=0..k} c_j R^-jm ||Du||_{W^{k-j,r}(B)}
                              + c_{k+1} R^-(k+1)m ||u||_{L^r(B)}
"""
import logging

from ..elliptic.operator import apply
from ..elliptic.series import local_series_solve
from ..exponents.sobolev import sobolev_exponent
from ..fields.norms import Ball, lp_norm, sobolev_norm
from .family import as_members, as_radii
from .report import build_report, make_instance

log = logging.getLogger(__name__)

LOCAL_ESTIMATE = "local-estimate"
CHAIN = "chain(k=%d)"
LOCAL_EXISTENCE = "local-existence"
LOCAL_L2 = "local-existence-L2"


def _chain_terms(operator, member, center, radius, r, k, estimate_error):
    metric = operator.metric
    u = member.section
    m = operator.order
    outer = Ball(tuple(center), radius)
    inner = Ball(tuple(center), radius / 2.0)
    du = apply(operator, u)
    lhs = sobolev_norm(u, m + k, r, metric, inner,
                       estimate_error=estimate_error)
    terms = [radius ** (-j * m) *
             sobolev_norm(du, k - j, r, metric, outer).value
             for j in range(k + 1)]
    terms.append(radius ** (-(k + 1) * m) *
                 lp_norm(u, r, outer, metric=metric).value)
    return make_instance("%s R=%g" % (member.name, radius), lhs.value, terms,
                         radius=radius, error=lhs.error)


def verify_chain(operator, sections, center, radii, r, k, cap=None,
                 estimate_error=False):
    """
    Checks the order k chain of the local estimate over sections and radii.

    Args:
        operator (EllipticOperator)
        sections (GridSection, Member or a sequence of them)
        center (tuple of int): grid node x
        radii (float or sequence): ball radii R
        r (float): r >= 1
        k (int): k >= 0; orders m + k above two use chart partials
        cap (float): admissible radius at x, larger radii are skipped
        estimate_error (bool): attach quadrature error estimates of the lhs

    Returns:
        EstimateReport

    Example:
        verify_chain(hodge_laplacian(metric), u, (0,), [1, 0.5], 2, 1)
    """
    names = ["R^-%dm |Du|_W^%d" % (j, k - j) for j in range(k + 1)]
    names.append("R^-%dm |u|_L" % (k + 1))
    kept = as_radii(radii)
    if cap is not None:
        skipped = [radius for radius in kept if radius > cap]
        if skipped:
            log.warning("radii %s exceed the admissible radius %g",
                        skipped, cap)
        kept = [radius for radius in kept if radius <= cap]
    instances = [_chain_terms(operator, member, center, radius, r, k,
                              estimate_error)
                 for member in as_members(sections) for radius in kept]
    identifier = LOCAL_ESTIMATE if k == 0 else CHAIN % k
    return build_report(identifier, names, instances,
                        metadata={"operator": operator.name,
                                  "order": operator.order,
                                  "center": list(center), "r": float(r),
                                  "k": int(k), "radii": kept})


def verify_local_estimate(operator, sections, center, radii, r, cap=None,
                          estimate_error=False):
    """
    Checks the local estimate for every section of a family and every ball
    radius, and fits (c_1, c_2).

    The report's radius profile and slope say whether the constants stay
    put as R shrinks.

    Example:
        family = estimate_family(metric)
        verify_local_estimate(D, family, (0,), [1, 0.5, 0.25, 0.125], 2)
    """
    report = verify_chain(operator, sections, center, radii, r, 0, cap=cap,
                          estimate_error=estimate_error)
    report.term_names = ["|Du|_L(B)", "R^-m |u|_L(B)"]
    return report


def verify_local_existence(operator, data, center, radii, r, basis=None):
    """
    Local existence: the series solution u of D u = omega on B satisfies

        ||u||_{L^t(B^1)} <= c_f ||omega||_{L^r(B)},   t = S_m(r)
        ||u||_{L^2(B)}   <= c   ||omega||_{L^2(B)}

    Args:
        operator (EllipticOperator)
        data (GridSection, Member or sequence): omega, only its values on
                                                each ball are used
        center (tuple of int)
        radii (float or sequence): small enough for the series solver
        r (float): data exponent, r >= 1

    Returns:
        (EstimateReport, EstimateReport): the L^t and the L^2 estimates

    Raises:
        BallTooLarge: from the series solver
    """
    metric = operator.metric
    t = sobolev_exponent(r, operator.order, metric.dimension)
    main, square = [], []
    for member in as_members(data):
        for radius in as_radii(radii):
            outer = Ball(tuple(center), radius)
            inner = Ball(tuple(center), radius / 2.0)
            mask = outer.mask(metric)
            result = local_series_solve(operator, member.section, mask,
                                        basis=basis)
            label = "%s R=%g" % (member.name, radius)
            main.append(make_instance(
                label, lp_norm(result.solution, float(t), inner,
                               metric=metric).value,
                [lp_norm(member.section, r, outer, metric=metric).value],
                radius=radius))
            square.append(make_instance(
                label, lp_norm(result.solution, 2, outer,
                               metric=metric).value,
                [lp_norm(member.section, 2, outer, metric=metric).value],
                radius=radius))
    metadata = {"operator": operator.name, "r": float(r), "t": str(t)}
    return (build_report(LOCAL_EXISTENCE, ["|omega|_L^r(B)"], main,
                         metadata=metadata),
            build_report(LOCAL_L2, ["|omega|_L^2(B)"], square,
                         metadata=metadata))
