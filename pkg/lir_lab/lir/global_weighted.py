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
This module checks the global weighted estimates on a manifold covered by
admissible balls.

The weighted norms are assembled ball by ball over the cover, with the
weights frozen at the ball centers, and compared against direct
quadrature with pointwise weights. With t_(l-1) <= r < t_l:

    ||u||_{L^r(M, v_r^r)} <= sum_{j=1..l} c_j ||omega||_{L^t_(l-j)(M, w_j)}
                             + c_(l+1) ||omega||_{L^2(M)}

    ||u||_{W^{m,r}(M, v'_r)} <= c_1 ||omega||_{L^t_l(M, v'_r)}
                                + c_2 max(||omega||_{L^t_(l-1)(M, w_l)},
                                          ||omega||_{L^2(M)})

and, for a radius field bounded below, the unweighted max form
||u||_{L^r} <= c max(||omega||_{L^t_(l-1)}, ||omega||_{L^2}).
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..covering.vitali import build_cover
from ..elliptic.harmonic import harmonic_basis
from ..elliptic.solve import min_norm_solve
from ..exponents.sobolev import exponent_chain
from ..exponents.weights import V_R_BALL, V_R_PRIME, W_L, weight_field, \
    weight_spec
from ..fields.norms import lp_norm, sobolev_norm
from ..geometry.distance import local_distances
from .family import as_members
from .report import build_report, make_instance

log = logging.getLogger(__name__)

GLOBAL_WEIGHTED = "global-weighted"
GLOBAL_SOBOLEV = "global-weighted-W"
GLOBAL_MAX = "global-max"
STABILITY = 0.2


def _power_sum(modulus, dv, nodes, p):
    """sum over nodes of |f|^p dv, or the max of |f| for p = inf."""
    if math.isinf(p):
        return float(modulus[nodes].max()) if nodes.size else 0.0
    return float(np.sum(modulus[nodes] ** p * dv[nodes]))


class _CoverSums(object):
    """Per-ball node sets of the cover and its dilations, built once."""

    def __init__(self, cover, metric):
        self.cover = cover
        self.metric = metric
        self.dv = metric.dv.ravel()
        self.shape = metric.grid.shape
        self._nodes = {}

    def nodes(self, index, level):
        key = (index, level)
        if key not in self._nodes:
            if level == 0:
                self._nodes[key] = np.asarray(self.cover.members[index])
            else:
                ball = self.cover.balls[index]
                source = int(np.ravel_multi_index(ball.center, self.shape))
                self._nodes[key], _ = local_distances(
                    self.metric, source, ball.inflated_radius * 2 ** level)
        return self._nodes[key]

    def weighted_norm(self, section, p, radius_at, exponent, level):
        """(sum_B (R_B^e ||f||_{L^p(2^level B)})^p)^(1/p)."""
        modulus = section.modulus.ravel()
        total = 0.0
        for index, ball in enumerate(self.cover.balls):
            weight = radius_at[index] ** exponent
            local = _power_sum(modulus, self.dv, self.nodes(index, level), p)
            if math.isinf(p):
                total = max(total, weight * local)
            else:
                total += weight ** p * local
        return total if math.isinf(p) else total ** (1.0 / p)


def verify_global_weighted(operator, data, radius_field, r, cover=None,
                           basis=None):
    """
    Global weighted estimates for u = S omega over a family of data.

    Args:
        operator (EllipticOperator)
        data (GridSection, Member or sequence): omega, orthogonal to the
                                                harmonic space
        radius_field (AdmissibleRadiusField): computed or injected
        r (float): r >= 2
        cover (AdmissibleCover): built from the field if None
        basis (HarmonicBasis): computed if None

    Returns:
        EstimateReport of the L^r form; its metadata carries the W^{m,r}
        and max-form reports, the overlap bound and the covering-sum over
        direct-quadrature ratios

    Raises:
        NotOrthogonal: from min_norm_solve
        ChainExhausted: from exponent_chain

    Example:
        verify_global_weighted(D, random_data(metric, 6), field, 4)
    """
    metric = operator.metric
    n, m = metric.dimension, operator.order
    chain = exponent_chain(n, m, r)
    l = chain.l
    t = [float(chain.t(j)) for j in range(l + 1)]
    r = float(r)
    cover = cover if cover is not None else build_cover(radius_field,
                                                        metric)
    sums = _CoverSums(cover, metric)
    values = radius_field.values
    radius_at = np.array([values[ball.center] for ball in cover.balls])
    ball_exponent = float(weight_spec(V_R_BALL, n, m, r).exponent)
    prime = weight_field(weight_spec(V_R_PRIME, n, m, r), radius_field)
    low = weight_field(weight_spec(W_L, n, m, r), radius_field)
    basis = basis if basis is not None else harmonic_basis(operator)

    main, sobolev, maxform = [], [], []
    ratios = []
    for member in as_members(data):
        omega = member.section
        u = min_norm_solve(operator, omega, basis)
        energy = lp_norm(omega, 2, metric=metric).value
        lhs = sums.weighted_norm(u, r, radius_at, ball_exponent, 0)
        direct = lp_norm(u, r, metric=metric,
                         weight=values ** (r * ball_exponent)).value
        terms = []
        for j in range(1, l + 1):
            p, e = t[l - j], (l + 1 - j) * m
            terms.append(sums.weighted_norm(omega, p, radius_at, e, j))
            ratios.append({"instance": member.name, "term": "w_%d" % j,
                           "ratio": _ratio(terms[-1], lp_norm(
                               omega, p, metric=metric,
                               weight=values ** (p * e)).value)})
        ratios.append({"instance": member.name, "term": "v_r",
                       "ratio": _ratio(lhs, direct)})
        main.append(make_instance(member.name, lhs, terms + [energy]))
        floor = max(lp_norm(omega, t[l - 1], metric=metric,
                            weight=low).value, energy)
        sobolev.append(make_instance(
            member.name, sobolev_norm(u, m, r, metric, weight=prime).value,
            [lp_norm(omega, t[l], metric=metric, weight=prime).value,
             floor]))
        maxform.append(make_instance(member.name, direct, [floor]))

    names = ["|omega|_t%d(w_%d)" % (l - j, j) for j in range(1, l + 1)]
    metadata = {"operator": operator.name, "r": r, "l": l,
                "resolution": list(metric.grid.shape),
                "chain": [str(x) for x in chain.terms],
                "provenance": radius_field.provenance,
                "cover_balls": len(cover.balls),
                "max_overlap": cover.max_overlap,
                "overlap_bound": cover.bound,
                "cover_to_direct": ratios}
    report = build_report(GLOBAL_WEIGHTED, names + ["|omega|_L2"], main,
                          metadata=metadata)
    report.metadata[GLOBAL_SOBOLEV] = build_report(
        GLOBAL_SOBOLEV, ["|omega|_t_l(v'_r)", "max(t_l-1, L2)"],
        sobolev).as_dict()
    report.metadata[GLOBAL_MAX] = build_report(
        GLOBAL_MAX, ["max(t_l-1, L2)"], maxform).as_dict()
    return report


def _ratio(a, b):
    return a / b if b > 0 else (1.0 if a == 0 else math.inf)


def _rescale(constants, instances):
    """Smallest factor making ``constants`` valid on ``instances``."""
    if constants is None:
        return math.inf
    worst = 0.0
    for item in instances:
        rhs = float(np.dot(constants, item["terms"]))
        if item["lhs"] > 0.0:
            worst = max(worst, _ratio(item["lhs"], rhs))
    return worst


def _stability(first, second):
    """max |lambda - 1| over both transfers of fitted constants."""
    a = _rescale(first["constants"], second["instances"])
    b = _rescale(second["constants"], first["instances"])
    return max(abs(a - 1.0), abs(b - 1.0))


def _label(report):
    return "x".join(str(size) for size in report.metadata["resolution"])


@dataclass
class RefinementStudy:
    resolutions: list
    reports: list
    stability: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(report.passed for report in self.reports) and \
            all(value <= STABILITY for value in self.stability.values())

    def as_dict(self):
        return {"resolutions": [list(res) for res in self.resolutions],
                "stability": self.stability, "threshold": STABILITY,
                "passed": self.passed,
                "reports": [report.as_dict() for report in self.reports]}


def weighted_refinement_study(build, resolutions, r):
    """
    Runs verify_global_weighted at several resolutions and measures how far
    the constants fitted at one resolution must be rescaled to hold at the
    next.

    Args:
        build (callable): resolution -> (operator, data, radius_field)
        resolutions (sequence of tuples): e.g. [(16,) * 3, (32,) * 3]
        r (float)

    Returns:
        RefinementStudy, passed when every report passes and every rescale
        factor is within 20% of one
    """
    reports = []
    for resolution in resolutions:
        operator, data, radius_field = build(tuple(resolution))
        reports.append(verify_global_weighted(operator, data, radius_field,
                                              r))
    study = RefinementStudy(resolutions=[tuple(res) for res in resolutions],
                            reports=reports)
    for coarse, fine in zip(reports, reports[1:]):
        pairs = [(GLOBAL_WEIGHTED, coarse.as_dict(), fine.as_dict()),
                 (GLOBAL_MAX, coarse.metadata[GLOBAL_MAX],
                  fine.metadata[GLOBAL_MAX])]
        for name, a, b in pairs:
            key = "%s %s->%s" % (name, _label(coarse), _label(fine))
            study.stability[key] = _stability(a, b)
    for key, value in study.stability.items():
        log.info("refinement %s: rescale %.3f", key, value)
    return study
