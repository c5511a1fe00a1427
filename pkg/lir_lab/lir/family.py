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
Test families for the estimate verifications: trigonometric modes, seeded
band-limited fields and wrapped Gaussian bumps, plus the nested balls
B^l = B(x, R / 2^l).

Members are defined by closed forms in the chart coordinates, so the same
seed gives the same field at every resolution.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..common.exception import LirOperationError
from ..common.utils import make_rng
from ..fields.norms import Ball
from ..fields.section import GridSection

MODES = 6
BAND_LIMIT = 2
BAND_FIELDS = 5
BUMPS = 3
BUMP_WIDTH = 0.3
COMPONENT_SHIFT = 0.5


@dataclass(frozen=True)
class Member:
    name: str
    section: GridSection


def _sample(metric, func, rank):
    """Component c samples ``func`` shifted by c * COMPONENT_SHIFT along
    the first axis."""
    coords = metric.grid.coordinates
    components = []
    for c in range(rank):
        shifted = coords.copy()
        shifted[..., 0] -= c * COMPONENT_SHIFT
        components.append(func(shifted))
    return GridSection(np.stack(components, axis=-1), metric.grid, metric)


def band_limited(lengths, seed, limit=BAND_LIMIT):
    """
    Real field sum_k Re(c_k exp(i 2 pi k.y / P)) over integer modes with
    |k_i| <= limit, with seeded normal coefficients.

    Returns:
        callable of the coordinates
    """
    rng = make_rng(seed)
    modes = np.array(list(itertools.product(range(-limit, limit + 1),
                                            repeat=len(lengths))))
    coeffs = (rng.standard_normal(len(modes)) +
              1j * rng.standard_normal(len(modes))) / math.sqrt(len(modes))
    waves = 2.0 * math.pi * modes / np.asarray(lengths, dtype=float)

    def field(coords):
        phase = np.tensordot(coords, waves.T, axes=1)
        return np.real(np.exp(1j * phase) @ coeffs)
    return field


def wrapped_bump(lengths, periodic, center, width=BUMP_WIDTH):
    """exp(-|y - c|^2 / (2 width^2)) with the minimum-image distance on
    periodic axes."""
    def field(coords):
        square = np.zeros(coords.shape[:-1])
        for axis, (length, per) in enumerate(zip(lengths, periodic)):
            delta = coords[..., axis] - center[axis]
            if per:
                delta = delta - length * np.round(delta / length)
            square += delta ** 2
        return np.exp(-square / (2.0 * width ** 2))
    return field


def estimate_family(metric, seed=0, rank=1, modes=MODES):
    """
    The standard family: the constant, cos and sin of k y_0 for
    k = 1..modes, seeded band-limited fields and wrapped bumps.

    Args:
        metric (MetricField)
        seed (int): seed of the random members
        rank (int): rank of the sections
        modes (int)

    Returns:
        list of Member, 21 members with the defaults
    """
    grid = metric.grid
    scale = 2.0 * math.pi / grid.lengths[0]
    members = [Member("const", _sample(
        metric, lambda y: np.ones(y.shape[:-1]), rank))]
    for k in range(1, modes + 1):
        members.append(Member("cos(%dx)" % k, _sample(
            metric, lambda y, k=k: np.cos(k * scale * y[..., 0]), rank)))
        members.append(Member("sin(%dx)" % k, _sample(
            metric, lambda y, k=k: np.sin(k * scale * y[..., 0]), rank)))
    for i in range(BAND_FIELDS):
        members.append(Member("band[%d]" % i, _sample(
            metric, band_limited(grid.lengths, seed + i), rank)))
    rng = make_rng(seed + BAND_FIELDS)
    for i in range(BUMPS):
        center = [rng.uniform(0.0, length) for length in grid.lengths]
        members.append(Member("bump[%d]" % i, _sample(
            metric, wrapped_bump(grid.lengths, grid.periodic, center),
            rank)))
    return members


def random_data(metric, count, seed=0, rank=1, limit=BAND_LIMIT):
    """``count`` seeded band-limited sections, the same at every
    resolution."""
    return [Member("omega[%d]" % i, _sample(
        metric, band_limited(metric.grid.lengths, seed + i, limit), rank))
        for i in range(count)]


@dataclass(frozen=True)
class NestedBallFamily:
    """B^l = B(center, radius / 2^l) for l = 0..depth."""
    center: tuple
    radius: float
    depth: int

    def ball(self, level):
        if not 0 <= level <= self.depth:
            raise LirOperationError("NestedBallFamily",
                                    "level %d outside 0..%d"
                                    % (level, self.depth))
        return Ball(tuple(self.center), self.radius / 2.0 ** level)

    @property
    def balls(self):
        return [self.ball(level) for level in range(self.depth + 1)]


def nested_balls(metric, center, radius, depth):
    """
    Builds B^0 ⊃ B^1 ⊃ ... ⊃ B^depth around a grid node.

    Raises:
        LirOperationError: on a nonpositive radius or one beyond the chart
    """
    if not radius > 0.0:
        raise LirOperationError("nested_balls", "radius must be positive")
    if radius > metric.model.chart_radius:
        raise LirOperationError("nested_balls",
                                "radius %g exceeds the chart radius %g"
                                % (radius, metric.model.chart_radius))
    return NestedBallFamily(center=tuple(int(c) for c in center),
                            radius=float(radius), depth=int(depth))


def as_members(sections):
    """Accepts a section, a Member or a sequence of either."""
    if isinstance(sections, Member):
        return [sections]
    if hasattr(sections, "values"):
        return [Member("u", sections)]
    return [item if isinstance(item, Member) else Member("u[%d]" % i, item)
            for i, item in enumerate(sections)]


def as_radii(radii):
    if isinstance(radii, (int, float)):
        return [float(radii)]
    return [float(radius) for radius in radii]
