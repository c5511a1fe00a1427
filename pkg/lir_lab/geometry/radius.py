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
This module computes the m,epsilon-admissible radius of a metric and holds
the radius fields the covering and the weighted estimates are built on.

Admissibility of a ball B(x, R) in the canonical chart means

    (1) the eigenvalues of g lie in [1 - eps, 1 + eps] on the ball,
    (2) sum over 1 <= |beta| <= m - 1 of sup |d^beta g_ij| <= eps.

For the conformal bump g = (1 + a sin(k.y)) delta every derivative of
order p is a kappa^beta sin(phi + p pi / 2), so both conditions reduce to
the supremum of |sin| over the phase interval swept by the ball. That
supremum is taken exactly, which dominates any sampled value.
"""
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..common.exception import InjectionRejected, NotAdmissible
from ..common.utils import flat_index, make_rng
from .distance import local_distances

log = logging.getLogger(__name__)

COMPUTED = "computed"
INJECTED = "injected"

BISECTION_TOL = 1e-4
CHECK_PAIRS = 10000


@dataclass
class AdmissibleRadiusField:
    """
    Admissible radius R(x) in (0, 1] per grid node.
    """
    values: np.ndarray
    epsilon: float
    m: int
    provenance: str
    metric: object

    @property
    def seed_radii(self):
        return self.values / 120.0


def _order_weights(kappa, m):
    """h_p = sum over |beta| = p of |kappa^beta|, for p = 1 .. m - 1."""
    kappa = np.abs(np.asarray(kappa, dtype=float))
    weights = []
    for p in range(1, m):
        total = 0.0
        for combo in itertools.combinations_with_replacement(
                range(len(kappa)), p):
            total += float(np.prod(kappa[list(combo)]))
        weights.append(total)
    return weights


def _sup_abs_sin(center, half_width):
    """Exact sup of |sin| over [center - w, center + w], vectorized."""
    lo = center - half_width
    hi = center + half_width
    # a peak pi/2 + j pi lies in [lo, hi]
    peak = np.floor((hi - 0.5 * math.pi) / math.pi) >= \
        np.ceil((lo - 0.5 * math.pi) / math.pi)
    edge = np.maximum(np.abs(np.sin(lo)), np.abs(np.sin(hi)))
    return np.where(peak, 1.0, edge)


def _conditions(phase, half_width, amplitude, order_weights, epsilon):
    a = abs(amplitude)
    cond1 = a * _sup_abs_sin(phase, half_width) <= epsilon
    total = np.zeros_like(phase)
    for p, h in enumerate(order_weights, start=1):
        total = total + h * a * _sup_abs_sin(phase + 0.5 * p * math.pi,
                                             half_width)
    return cond1 & (total <= epsilon)


def _radii(metric, phases, epsilon, m):
    model = metric.model
    cap = min(1.0, model.chart_radius)
    if model.is_flat:
        return np.full(phases.shape, cap)
    a = model.amplitude
    kappa_norm = float(np.linalg.norm(model.wave_vector))
    weights = _order_weights(model.wave_vector, m)
    # geodesic B(x, R) sits inside the chart ball of radius R / sqrt(1 - |a|)
    stretch = kappa_norm / math.sqrt(1.0 - abs(a))

    ok = _conditions(phases, 0.0, a, weights, epsilon)
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok.ravel())[0])
        raise NotAdmissible("admissible_radius",
                            "admissibility fails at the ball center",
                            node=bad, value=0.0)

    lo = np.zeros(phases.shape)
    hi = np.full(phases.shape, cap)
    full = _conditions(phases, stretch * cap, a, weights, epsilon)
    steps = 0
    while np.any(~full & (hi - lo > BISECTION_TOL)):
        mid = 0.5 * (lo + hi)
        good = _conditions(phases, stretch * mid, a, weights, epsilon)
        lo = np.where(good, mid, lo)
        hi = np.where(good, hi, mid)
        steps += 1
    log.debug("radius bisection finished after %d steps", steps)
    radii = np.where(full, cap, lo)
    if np.any(radii <= 0.0):
        raise NotAdmissible("admissible_radius",
                            "admissible radius below the bisection "
                            "tolerance %g" % BISECTION_TOL)
    return radii


def _check_parameters(epsilon, m):
    if not 0.0 < epsilon < 1.0:
        raise NotAdmissible("admissible_radius",
                            "epsilon must lie in (0, 1), got %g" % epsilon)
    if int(m) < 2:
        raise NotAdmissible("admissible_radius",
                            "m must be >= 2, got %s" % m)


def admissible_radius(metric, x, epsilon, m):
    """
    Admissible radius R_eps(x) = min(1, R'(x), chart radius) at a node.

    Args:
        metric (MetricField)
        x (tuple of int): grid node
        epsilon (float): closeness to Euclidean, 0 < epsilon < 1
        m (int): derivative order parameter, m >= 2

    Returns:
        float in (0, 1]

    Raises:
        NotAdmissible: if the conditions already fail at x

    Example:
        admissible_radius(metric, (0,), 0.1, 2)
    """
    _check_parameters(epsilon, m)
    point = metric.grid.coordinates[tuple(x)]
    phase = np.atleast_1d(metric.phase_at(point))
    return float(_radii(metric, phase, epsilon, int(m))[0])


def radius_field(metric, epsilon, m):
    """
    Admissible radius at every grid node.

    Returns:
        AdmissibleRadiusField with provenance "computed"
    """
    _check_parameters(epsilon, m)
    phases = metric.phase_at(metric.grid.coordinates)
    values = _radii(metric, np.asarray(phases, dtype=float), epsilon, int(m))
    values = np.broadcast_to(values, metric.grid.shape).copy()
    log.info("radius field: min %.4g max %.4g", values.min(), values.max())
    return AdmissibleRadiusField(values=values, epsilon=float(epsilon),
                                 m=int(m), provenance=COMPUTED,
                                 metric=metric)


def _sample_pairs(shape, periodic, count, rng):
    size = int(np.prod(shape))
    half = count // 2
    first = rng.integers(0, size, size=count)
    second = np.empty(count, dtype=np.int64)
    second[:half] = rng.integers(0, size, size=half)
    nodes = np.array(np.unravel_index(first[half:], shape)).T
    steps = rng.integers(-3, 4, size=nodes.shape)
    near = nodes + steps
    for axis, (n, per) in enumerate(zip(shape, periodic)):
        if per:
            near[:, axis] %= n
        else:
            near[:, axis] = np.clip(near[:, axis], 0, n - 1)
    second[half:] = np.ravel_multi_index(near.T, shape)
    return first, second


def radius_comparison_check(field, pairs=CHECK_PAIRS, seed=0):
    """
    Samples node pairs and checks d(x, y) <= (R(x) + R(y)) / 4 implies
    R(x) <= 4 R(y) in both orders. Half the pairs are uniform, half are
    within three grid steps of each other.

    Returns:
        (violations, checked): list of violating flat index pairs and the
        number of pairs sampled
    """
    metric = field.metric
    grid = metric.grid
    values = field.values.ravel()
    rng = make_rng(seed)
    first, second = _sample_pairs(grid.shape, grid.periodic, pairs, rng)
    violations = []
    for x, y in zip(first.tolist(), second.tolist()):
        rx, ry = values[x], values[y]
        if max(rx, ry) <= 4.0 * min(rx, ry):
            continue
        limit = 0.25 * (rx + ry)
        nodes, _ = local_distances(metric, x, limit)
        if np.any(nodes == y):
            violations.append((x, y))
    return violations, len(first)


def inject_radius_field(metric, values, epsilon=None, m=None,
                        pairs=CHECK_PAIRS, seed=0):
    """
    Wraps externally supplied radii as a radius field after checking them.

    Args:
        metric (MetricField)
        values (array or callable): radii on the grid, or a function of the
                                    node coordinates returning them
        epsilon (float): recorded with the field
        m (int): recorded with the field
        pairs (int): pairs sampled for the overlap-compatibility check
        seed (int): sampling seed

    Returns:
        AdmissibleRadiusField with provenance "injected"

    Raises:
        InjectionRejected: on values outside (0, 1] or a sampled violation

    Example:
        inject_radius_field(metric, lambda y: 0.5 + 0.25 * np.cos(y[..., 0]))
    """
    if callable(values):
        values = values(metric.grid.coordinates)
    values = np.broadcast_to(np.asarray(values, dtype=float),
                             metric.grid.shape).copy()
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0) or \
            np.any(values > 1.0):
        raise InjectionRejected("inject_radius_field",
                                "radii must lie in (0, 1]")
    field = AdmissibleRadiusField(values=values, epsilon=epsilon, m=m,
                                  provenance=INJECTED, metric=metric)
    violations, checked = radius_comparison_check(field, pairs=pairs,
                                                  seed=seed)
    if violations:
        raise InjectionRejected("inject_radius_field",
                                "%d of %d sampled pairs break the radius "
                                "comparison property"
                                % (len(violations), checked),
                                pair=violations[0])
    return field


def node_radius(field, x):
    return float(field.values.ravel()[flat_index(field.values.shape, x)])
