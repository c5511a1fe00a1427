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
This module audits the overlap of an admissible covering.
"""
from dataclasses import dataclass

import numpy as np

from ..common.utils import make_rng


@dataclass
class OverlapReport:
    counts: np.ndarray
    max_overlap: int
    bound: float
    passed: bool
    integral_lhs: float
    integral_rhs: float
    integral_passed: bool

    def as_dict(self):
        return {"max_overlap": self.max_overlap, "bound": self.bound,
                "passed": self.passed, "integral_lhs": self.integral_lhs,
                "integral_rhs": self.integral_rhs,
                "integral_passed": self.integral_passed}


def overlap_stats(cover, metric=None, f=None, seed=0):
    """
    Per-node overlap counts of the inflated balls and the integral
    consequence sum_j int_{B_j} |f| <= T ||f||_1.

    Args:
        cover (AdmissibleCover)
        metric (MetricField): defaults to the cover's metric
        f (ndarray): test field; a seeded random nonnegative field if None
        seed (int): seed for the random test field

    Returns:
        OverlapReport

    Example:
        overlap_stats(cover).max_overlap
    """
    metric = metric if metric is not None else cover.metric
    shape = metric.grid.shape
    counts = np.zeros(metric.grid.size, dtype=np.int64)
    for nodes in cover.members:
        counts[nodes] += 1
    if f is None:
        f = make_rng(seed).random(shape)
    density = (np.abs(np.asarray(f)) * metric.dv).ravel()
    lhs = float(np.sum(counts * density))
    rhs = float(cover.bound * np.sum(density))
    max_overlap = int(counts.max())
    return OverlapReport(counts=counts.reshape(shape),
                         max_overlap=max_overlap, bound=cover.bound,
                         passed=max_overlap <= cover.bound,
                         integral_lhs=lhs, integral_rhs=rhs,
                         integral_passed=lhs <= rhs * (1.0 + 1e-12))
