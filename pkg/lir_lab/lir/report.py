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
This module fits the constants of an estimate family and turns the fit into
a verdict.

Every instance reads lhs <= sum_k c_k a_k. The constants are the
nonnegative c minimizing the mean normalized right-hand side subject to
every training instance holding, solved as a linear program. The radius
profile rescales the fitted constants by the smallest factor that keeps all
instances of radius >= R valid and regresses its logarithm against log R.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from ..common.utils import make_rng

log = logging.getLogger(__name__)

HOLD_RTOL = 1e-7
HOLD_ATOL = 1e-13
SLOPE_RANGE = 0.2


@dataclass
class EstimateReport:
    identifier: str
    term_names: list
    instances: list
    constants: list = None
    passed: bool = False
    radius_profile: dict = field(default_factory=dict)
    slope: float = None
    metadata: dict = field(default_factory=dict)

    @property
    def radius_independent(self):
        if self.slope is None:
            return None
        return abs(self.slope) <= SLOPE_RANGE

    def rows(self):
        """Flat per-instance rows for CSV export."""
        rows = []
        for item in self.instances:
            row = {"identifier": self.identifier,
                   "descriptor": item["descriptor"],
                   "radius": item.get("radius"),
                   "lhs": item["lhs"],
                   "rhs": item.get("rhs"),
                   "holds": item.get("holds"),
                   "error": item.get("error")}
            for name, value in zip(self.term_names, item["terms"]):
                row[name] = value
            rows.append(row)
        return rows

    def as_dict(self):
        return {"identifier": self.identifier,
                "term_names": list(self.term_names),
                "constants": self.constants,
                "passed": self.passed,
                "slope": self.slope,
                "radius_independent": self.radius_independent,
                "radius_profile": {repr(k): v for k, v in
                                   sorted(self.radius_profile.items())},
                "tolerance": {"relative": HOLD_RTOL, "absolute": HOLD_ATOL},
                "metadata": self.metadata,
                "instances": self.instances}


def make_instance(descriptor, lhs, terms, radius=None, error=None):
    """
    One inequality instance.

    Args:
        descriptor (str): what was measured, e.g. "cos(3x) R=0.5"
        lhs (float)
        terms (sequence of float): right-hand side terms without constants
        radius (float): ball radius for the R-profile
        error (float): quadrature error estimate of the lhs, if known
    """
    return {"descriptor": descriptor, "radius": radius, "lhs": float(lhs),
            "terms": [float(t) for t in terms], "error": error}


def _holds(lhs, rhs):
    return lhs <= rhs * (1.0 + HOLD_RTOL) + HOLD_ATOL


def fit_constants(lhs, terms):
    """
    Nonnegative constants with lhs_i <= sum_k c_k terms_ik for every i.

    Args:
        lhs (array of shape (I,))
        terms (array of shape (I, K)), nonnegative

    Returns:
        ndarray of K constants, or None if no constants can satisfy an
        instance (positive lhs with all terms zero)
    """
    lhs = np.asarray(lhs, dtype=float)
    terms = np.asarray(terms, dtype=float).reshape(len(lhs), -1)
    count = terms.shape[1]
    live = lhs > HOLD_ATOL
    if not np.any(live):
        return np.zeros(count)
    scaled = terms[live] / lhs[live, None]
    if np.any(np.all(scaled <= 0.0, axis=1)):
        return None
    cost = scaled.mean(axis=0)
    # unused terms cost nothing; keep their constant at zero
    cost = np.where(cost > 0.0, cost, 1.0)
    result = linprog(cost, A_ub=-scaled, b_ub=-np.ones(len(scaled)),
                     bounds=[(0.0, None)] * count, method="highs")
    if not result.success:
        log.warning("constant fit failed: %s", result.message)
        return None
    return np.asarray(result.x, dtype=float)


def _rhs(item, constants):
    return float(np.dot(constants, item["terms"]))


def _profile(instances, constants):
    """Cumulative rescaling factor lambda(R) over instances with radius
    >= R."""
    by_radius = {}
    for item in instances:
        if item["radius"] is None:
            continue
        rhs = _rhs(item, constants)
        ratio = item["lhs"] / rhs if rhs > 0.0 else 0.0
        radius = float(item["radius"])
        by_radius[radius] = max(by_radius.get(radius, 0.0), ratio)
    profile = {}
    running = 0.0
    for radius in sorted(by_radius, reverse=True):
        running = max(running, by_radius[radius])
        profile[radius] = running
    return profile


def _slope(profile):
    points = [(math.log(r), math.log(v)) for r, v in profile.items()
              if v > 0.0]
    if len(points) < 2:
        return None
    x, y = np.array(points).T
    return float(np.polyfit(x, y, 1)[0])


def build_report(identifier, term_names, instances, train_fraction=1.0,
                 seed=0, metadata=None):
    """
    Fits constants on a training split and checks every instance.

    Args:
        identifier (str): name of the inequality, e.g. "local-estimate"
        term_names (list of str): one name per right-hand side term
        instances (list of dict): from make_instance
        train_fraction (float): share of instances used for the fit
        seed (int): seed of the split
        metadata (dict): copied into the report

    Returns:
        EstimateReport; a failed fit gives ``passed`` False and no
        constants
    """
    report = EstimateReport(identifier=identifier,
                            term_names=list(term_names),
                            instances=instances,
                            metadata=dict(metadata or {}))
    if not instances:
        report.constants = [0.0] * len(term_names)
        report.passed = True
        return report
    order = np.arange(len(instances))
    if train_fraction < 1.0:
        order = make_rng(seed).permutation(len(instances))
        order = order[:max(1, int(math.ceil(train_fraction * len(order))))]
    lhs = np.array([instances[i]["lhs"] for i in order])
    terms = np.array([instances[i]["terms"] for i in order])
    constants = fit_constants(lhs, terms)
    report.metadata["train_size"] = int(len(order))
    if constants is None:
        log.warning("%s: no nonnegative constants satisfy the family",
                    identifier)
        return report
    report.constants = [float(c) for c in constants]
    passed = True
    for item in instances:
        item["rhs"] = _rhs(item, constants)
        item["holds"] = bool(_holds(item["lhs"], item["rhs"]))
        passed = passed and item["holds"]
    report.passed = passed
    report.radius_profile = _profile(instances, constants)
    report.slope = _slope(report.radius_profile)
    if report.radius_independent is False:
        log.warning("%s: constant slope %.3f against log R", identifier,
                    report.slope)
    log.info("%s: %d instances, constants %s, passed %s", identifier,
             len(instances), report.constants, passed)
    return report
