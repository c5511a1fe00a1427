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
This module selects the Vitali subfamily of seed balls B(x, R(x) / 120)
and inflates it five times into the admissible covering.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from ..common.exception import CoverIncomplete
from ..common.utils import node_of
from ..geometry.distance import local_distances

log = logging.getLogger(__name__)

SEED_DIVISOR = 120.0
INFLATION = 5.0


@dataclass(frozen=True)
class CoverBall:
    index: int
    center: tuple
    seed_radius: float

    @property
    def inflated_radius(self):
        return INFLATION * self.seed_radius


@dataclass
class AdmissibleCover:
    balls: list
    epsilon: float
    counts: np.ndarray
    bound: float
    metric: object
    members: list = field(repr=False, default_factory=list)
    blockers: dict = field(repr=False, default_factory=dict)
    vitali_ok: bool = True

    @property
    def max_overlap(self):
        return int(self.counts.max())

    @property
    def centers(self):
        return [ball.center for ball in self.balls]


def overlap_bound(epsilon, n):
    """T = ((1 + eps) / (1 - eps))^(n/2) 120^n."""
    eps = 0.0 if epsilon is None else float(epsilon)
    return ((1.0 + eps) / (1.0 - eps)) ** (0.5 * n) * SEED_DIVISOR ** n


def build_cover(radius_field, metric=None):
    """
    Greedy Vitali selection over all grid nodes.

    Candidates are visited by decreasing seed radius, ties in lexicographic
    node order. A candidate is selected iff its seed ball is disjoint from
    every seed ball selected before it, i.e. d(c, s) > r(c) + r(s).

    Args:
        radius_field (AdmissibleRadiusField)
        metric (MetricField): defaults to the field's metric

    Returns:
        AdmissibleCover

    Raises:
        CoverIncomplete: if some node lies in no inflated ball

    Example:
        cover = build_cover(radius_field(metric, 0.1, 2))
    """
    metric = metric if metric is not None else radius_field.metric
    shape = metric.grid.shape
    seed = radius_field.values.ravel() / SEED_DIVISOR
    order = np.lexsort((np.arange(seed.size), -seed))
    r_max = float(seed.max())

    selected_radius = {}
    blockers = {}
    vitali_ok = True
    balls = []
    for c in order.tolist():
        rc = float(seed[c])
        nodes, dists = local_distances(metric, c, rc + r_max)
        blocker = None
        for node, d in zip(nodes.tolist(), dists.tolist()):
            rs = selected_radius.get(node)
            if rs is not None and d <= rc + rs:
                blocker = (node, d, rs)
                break
        if blocker is None:
            selected_radius[c] = rc
            balls.append(CoverBall(index=len(balls), center=node_of(shape, c),
                                   seed_radius=rc))
            continue
        node, d, rs = blocker
        blockers[c] = node
        # B(c, r_c) lies in B(s, d + r_c); Vitali asks d + r_c <= 5 r_s
        if d + rc > INFLATION * rs + 1e-12:
            vitali_ok = False

    counts = np.zeros(seed.size, dtype=np.int64)
    members = []
    for ball in balls:
        source = int(np.ravel_multi_index(ball.center, shape))
        nodes, _ = local_distances(metric, source, ball.inflated_radius)
        counts[nodes] += 1
        members.append(nodes)
    uncovered = np.flatnonzero(counts == 0)
    if uncovered.size:
        raise CoverIncomplete("build_cover",
                              "%d grid nodes lie in no inflated ball"
                              % uncovered.size,
                              nodes=[node_of(shape, i)
                                     for i in uncovered[:10]])
    log.info("cover: %d balls over %d nodes, max overlap %d",
             len(balls), seed.size, counts.max())
    return AdmissibleCover(balls=balls, epsilon=radius_field.epsilon,
                           counts=counts.reshape(shape),
                           bound=overlap_bound(radius_field.epsilon,
                                               metric.grid.ndim),
                           metric=metric, members=members,
                           blockers=blockers, vitali_ok=vitali_ok)
