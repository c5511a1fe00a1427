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
This module evaluates L^r and W^{k,r} norms of grid sections on the whole
grid or on metric balls, optionally weighted, with a quadrature error
estimate from a 2x spectral refinement.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..common.exception import LirOperationError
from ..geometry.distance import metric_ball
from ..geometry.metric import build_metric
from .derivatives import chart_derivatives, covariant_derivatives, \
    tensor_modulus
from .section import fourier_refine

log = logging.getLogger(__name__)

LEBESGUE = "L^r"
WEIGHTED = "L^r weighted"
SOBOLEV = "W^{k,r}"
CHART_SOBOLEV = "chart-Sobolev"


@dataclass(frozen=True)
class Ball:
    """Closed metric ball B(center, radius) around a grid node."""
    center: tuple
    radius: float

    def mask(self, metric):
        key = ("ball", tuple(self.center), float(self.radius))
        if key not in metric.cache:
            metric.cache[key] = metric_ball(metric, self.center, self.radius)
        return metric.cache[key]

    def scaled(self, factor):
        return Ball(tuple(int(c) * factor for c in self.center), self.radius)


@dataclass
class NormReport:
    kind: str
    value: float
    resolution: tuple
    error: float = None

    def __float__(self):
        return self.value

    def as_dict(self):
        return {"kind": self.kind, "value": self.value,
                "resolution": list(self.resolution), "error": self.error}


def _exponent(r):
    r = float(r)
    if not (r >= 1.0):
        raise LirOperationError("lp_norm", "r must be >= 1, got %g" % r)
    return r


def _domain_mask(domain, metric, grid):
    if domain is None:
        return np.ones(grid.shape, dtype=bool)
    if isinstance(domain, Ball):
        if metric is None:
            raise LirOperationError("lp_norm", "a ball needs a metric")
        return domain.mask(metric)
    return np.asarray(domain, dtype=bool)


def integrate_power(modulus, r, dv, mask, weight=None):
    """(sum |f|^r w dv over mask)^(1/r); the max of |f| for r = inf."""
    if math.isinf(r):
        live = mask if weight is None else mask & (weight > 0)
        return float(modulus[live].max()) if np.any(live) else 0.0
    density = dv if weight is None else dv * weight
    total = np.sum((modulus[mask] ** r) * density[mask])
    return float(total ** (1.0 / r))


def lp_norm(section, r, domain=None, weight=None, metric=None,
            estimate_error=False):
    """
    L^r norm (int_domain |u|^r weight dv)^(1/r).

    Args:
        section (GridSection)
        r (float): r >= 1, math.inf for the max norm
        domain (Ball, bool mask or None): None is the whole grid
        weight (ndarray): density multiplying dv, shaped like the grid
        metric (MetricField): defaults to the section's metric
        estimate_error (bool): rerun on a 2x spectrally refined grid and
                               report the change (periodic grids, no
                               weight, Ball or whole-grid domain)

    Returns:
        NormReport

    Example:
        lp_norm(u, 2, domain=Ball((0, 0), 0.3)).value
    """
    r = _exponent(r)
    metric = metric if metric is not None else section.metric
    grid = section.grid
    mask = _domain_mask(domain, metric, grid)
    dv = metric.dv if metric is not None else grid.cell_weights
    value = integrate_power(section.modulus, r, dv, mask, weight)
    error = None
    if estimate_error and metric is not None and weight is None and \
            all(grid.periodic) and (domain is None or
                                    isinstance(domain, Ball)):
        fine = build_metric(metric.model, grid.refined(2).shape)
        refined = fourier_refine(section, fine, 2)
        fine_domain = domain.scaled(2) if isinstance(domain, Ball) else None
        error = abs(lp_norm(refined, r, fine_domain, metric=fine).value -
                    value)
    kind = LEBESGUE if weight is None else WEIGHTED
    return NormReport(kind=kind, value=value, resolution=grid.shape,
                      error=error)


def derivative_moduli(section, k, metric=None):
    """
    Pointwise |nabla^j u| for j = 0..k. Orders up to two are covariant
    when a metric is given; higher orders use chart partials.
    """
    moduli = [section.modulus]
    if k == 0:
        return moduli
    if metric is not None and k <= 2:
        tensors = covariant_derivatives(section, metric, order=min(k, 2))
        for j, tensor in enumerate(tensors, start=1):
            moduli.append(tensor_modulus(tensor, metric, j))
        return moduli
    for j in range(1, k + 1):
        moduli.append(tensor_modulus(chart_derivatives(section, j), None, j))
    return moduli


def sobolev_norm(section, k, r, metric=None, domain=None, weight=None,
                 estimate_error=False):
    """
    W^{k,r} norm, the sum over j = 0..k of the L^r norms of |nabla^j u|.

    Args:
        section (GridSection)
        k (int): derivative order; k > 2 switches to chart partials and the
                 report is labelled "chart-Sobolev"
        r (float): r >= 1 or math.inf
        metric (MetricField): defaults to the section's metric
        domain (Ball, bool mask or None)
        weight (ndarray): optional density weight
        estimate_error (bool): as for lp_norm

    Returns:
        NormReport

    Example:
        sobolev_norm(u, 2, 2).value
    """
    r = _exponent(r)
    metric = metric if metric is not None else section.metric
    grid = section.grid
    mask = _domain_mask(domain, metric, grid)
    dv = metric.dv if metric is not None else grid.cell_weights
    moduli = derivative_moduli(section, k, metric)
    value = sum(integrate_power(mod, r, dv, mask, weight) for mod in moduli)
    error = None
    if estimate_error and metric is not None and weight is None and \
            all(grid.periodic) and (domain is None or
                                    isinstance(domain, Ball)):
        fine = build_metric(metric.model, grid.refined(2).shape)
        refined = fourier_refine(section, fine, 2)
        fine_domain = domain.scaled(2) if isinstance(domain, Ball) else None
        error = abs(sobolev_norm(refined, k, r, fine, fine_domain).value -
                    value)
    kind = SOBOLEV if k <= 2 else CHART_SOBOLEV
    return NormReport(kind=kind, value=value, resolution=grid.shape,
                      error=error)


@dataclass
class HolderReport:
    lhs: float
    rhs_sharp: float
    rhs_radius: float
    ball_volume: float
    sharp_holds: bool
    radius_ratio: float


def ball_holder_check(section, ball, r, t, metric=None):
    """
    Hoelder on a ball: ||u||_{L^r(B)} <= |B|^(1/r - 1/t) ||u||_{L^t(B)},
    and the radius form R^(1/r - 1/t) ||u||_{L^t(B)} for comparison.

    Args:
        section (GridSection)
        ball (Ball)
        r (float), t (float): 1 <= r < t, t may be math.inf

    Returns:
        HolderReport; ``radius_ratio`` is lhs over the radius-form bound
    """
    if not r < t:
        raise LirOperationError("ball_holder_check",
                                "need r < t, got r=%g t=%g" % (r, t))
    metric = metric if metric is not None else section.metric
    mask = ball.mask(metric)
    volume = float(np.sum(metric.dv[mask]))
    lhs = lp_norm(section, r, mask, metric=metric).value
    upper = lp_norm(section, t, mask, metric=metric).value
    power = 1.0 / r - (0.0 if math.isinf(t) else 1.0 / t)
    rhs_sharp = volume ** power * upper
    rhs_radius = ball.radius ** power * upper
    return HolderReport(lhs=lhs, rhs_sharp=rhs_sharp, rhs_radius=rhs_radius,
                        ball_volume=volume,
                        sharp_holds=lhs <= rhs_sharp * (1.0 + 1e-12),
                        radius_ratio=(lhs / rhs_radius if rhs_radius > 0
                                      else 0.0))
