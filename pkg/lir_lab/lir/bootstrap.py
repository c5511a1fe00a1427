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
This module runs the nested-ball bootstrap along the exponent chain.

The solution u = S omega is computed once on the whole manifold and reused
on every ball. With B^l = B(x, R / 2^l) and t_j = S_jm(2) the checked
inequalities are

    R^((l+1)m) ||u||_{L^t_l(B^l)}
        <= sum_{j=1..l} c_j R^((l-j+1)m) ||Du||_{L^t_(l-j)(B^(l-j))}
           + c_(l+1) ||u||_{L^2(B)}

its W^{m,t_l}(B^(l+1)) form with the extra c_0 R^((l+2)m) ||Du||_{L^t_l(B^l)}
term, and the interpolated form with R^((1/t_l - 1/r) + (l+1)m)
||u||_{L^r(B^l)} on the left.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from ..elliptic.harmonic import harmonic_basis
from ..elliptic.operator import apply
from ..elliptic.solve import min_norm_solve
from ..exponents.sobolev import ExtendedExponent, as_exponent, \
    exponent_chain, sobolev_exponent, step_bound
from ..fields.norms import lp_norm, sobolev_norm
from .family import as_members, as_radii, nested_balls
from .report import build_report, make_instance

log = logging.getLogger(__name__)

BOOTSTRAP = "bootstrap"
BOOTSTRAP_W = "bootstrap-W"
BOOTSTRAP_INTERPOLATED = "bootstrap-interpolated"


@dataclass
class ChainTrace:
    """Exponent chain of a bootstrap run and the norms met along it."""
    chain: object
    bound: int
    walked: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    solutions: list = field(default_factory=list)

    @property
    def steps(self):
        """Sobolev steps actually taken from t_0 = 2."""
        return max(len(self.walked) - 1, 0)

    @property
    def matches_chain(self):
        return self.steps == self.chain.l and \
            list(self.walked) == list(self.chain.terms[:self.steps + 1])

    @property
    def respects_bound(self):
        return self.matches_chain and self.steps <= self.bound

    def as_dict(self):
        return {"chain": [str(t) for t in self.chain.terms],
                "walked": [str(t) for t in self.walked],
                "l": self.chain.l, "steps": self.steps,
                "matches_chain": self.matches_chain,
                "step_bound": self.bound,
                "respects_bound": self.respects_bound,
                "levels": self.levels}


def walk_chain(n, m, r):
    """
    Exponents met by repeated Sobolev steps t -> S_m(t) from t = 2, up to
    the first one above r.

    Example:
        walk_chain(3, 1, 4)  # [2, 6]
    """
    r = as_exponent(r)
    walked = [ExtendedExponent(Fraction(2))]
    while not r < walked[-1]:
        walked.append(sobolev_exponent(walked[-1], m, n))
    return walked


def bootstrap(operator, data, center, radii, r, basis=None):
    """
    Bootstraps integrability of u = S omega along the exponent chain.

    Args:
        operator (EllipticOperator): order m on an n-manifold, n > 2m
                                     gives a finite t_1
        data (GridSection, Member or sequence): omega, orthogonal to the
                                                harmonic space
        center (tuple of int)
        radii (float or sequence): base radii R
        r (float): target exponent, r >= 2
        basis (HarmonicBasis): computed if None

    Returns:
        (ChainTrace, EstimateReport); the report metadata carries the
        W-form and interpolated-form reports

    Raises:
        ChainExhausted: from exponent_chain

    Example:
        trace, report = bootstrap(dirac_operator(metric), omega, (0, 0, 0),
                                  1.0, 4)
    """
    metric = operator.metric
    n, m = metric.dimension, operator.order
    chain = exponent_chain(n, m, r)
    bound = step_bound(chain.r.value, 2, Fraction(m, n))
    trace = ChainTrace(chain=chain, bound=bound,
                       walked=walk_chain(n, m, chain.r))
    basis = basis if basis is not None else harmonic_basis(operator)
    l = trace.steps
    t = [float(x) for x in trace.walked]
    interp_power = (float(trace.walked[l].reciprocal) - 1.0 / float(r) +
                    (l + 1) * m)

    main, wform, interp = [], [], []
    for member in as_members(data):
        u = min_norm_solve(operator, member.section, basis)
        du = apply(operator, u)
        trace.solutions.append(u)
        for radius in as_radii(radii):
            family = nested_balls(metric, center, radius, l + 1)
            label = "%s R=%g" % (member.name, radius)
            data_terms = [radius ** ((l - j + 1) * m) *
                          lp_norm(du, t[l - j], family.ball(l - j),
                                  metric=metric).value
                          for j in range(1, l + 1)]
            energy = lp_norm(u, 2, family.ball(0), metric=metric).value
            top = lp_norm(u, t[l], family.ball(l), metric=metric).value
            main.append(make_instance(
                label, radius ** ((l + 1) * m) * top, data_terms + [energy],
                radius=radius))
            extra = radius ** ((l + 2) * m) * lp_norm(
                du, t[l], family.ball(l), metric=metric).value
            wform.append(make_instance(
                label, radius ** ((l + 2) * m) *
                sobolev_norm(u, m, t[l], metric, family.ball(l + 1)).value,
                [extra] + data_terms + [energy], radius=radius))
            interp.append(make_instance(
                label, radius ** interp_power *
                lp_norm(u, r, family.ball(l), metric=metric).value,
                data_terms + [energy], radius=radius))
            trace.levels.append({"instance": label, "norms": [
                lp_norm(u, t[j], family.ball(j), metric=metric).value
                for j in range(l + 1)]})

    names = ["R^%dm |Du|_t%d(B^%d)" % (l - j + 1, l - j, l - j)
             for j in range(1, l + 1)] + ["|u|_L2(B)"]
    metadata = {"operator": operator.name, "r": float(r),
                "center": list(center), "trace": trace.as_dict()}
    report = build_report(BOOTSTRAP, names, main, metadata=metadata)
    report.metadata[BOOTSTRAP_W] = build_report(
        BOOTSTRAP_W, ["R^%dm |Du|_t%d(B^%d)" % (l + 2, l, l)] + names,
        wform).as_dict()
    report.metadata[BOOTSTRAP_INTERPOLATED] = build_report(
        BOOTSTRAP_INTERPOLATED, names, interp).as_dict()
    if not trace.respects_bound:
        log.warning("bootstrap took %d steps, chain has l = %d, bound %d",
                    trace.steps, chain.l, bound)
    return trace, report
