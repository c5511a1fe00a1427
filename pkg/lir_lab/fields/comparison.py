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
This module checks how norms behave under rescaling and change of metric:
the scaling identities on Euclidean balls, the Sobolev embedding constant
across radii, the metric versus chart norm comparison on admissible balls,
and the interpolation (Peter-Paul) inequality.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..exponents.sobolev import sobolev_exponent
from ..geometry.metric import build_metric
from ..geometry.model import build_model
from .norms import Ball, integrate_power, sobolev_norm
from .section import GridSection

log = logging.getLogger(__name__)


def _unit_lattice(n, resolution):
    axis = np.linspace(-1.0, 1.0, resolution + 1)
    unit = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1)
    mask = np.linalg.norm(unit, axis=-1) <= 1.0 + 1e-9
    return unit, mask


def _ball_norms(v, R, n, m, r, t, resolution):
    """
    Norms of u(y) = v(y / R) on B_R sampled on the lattice of spacing
    2R / resolution: [||d^j u||_{L^r}, j = 0..m] and ||u||_{L^t}.
    """
    unit, mask = _unit_lattice(n, resolution)
    h = 2.0 * R / resolution
    points = R * unit
    u = np.asarray(v(points / R), dtype=float)
    dv = np.full(mask.shape, h ** n)
    norms = []
    partials = [u]
    for j in range(m + 1):
        modulus = np.sqrt(sum(d ** 2 for d in partials))
        norms.append(integrate_power(modulus, r, dv, mask))
        if j < m:
            partials = [np.gradient(d, h, axis=a, edge_order=2)
                        for d in partials for a in range(n)]
    return norms, integrate_power(np.abs(u), t, dv, mask)


@dataclass
class ScalingReport:
    n: int
    m: int
    r: float
    t: float
    rows: list = field(default_factory=list)
    constants: list = field(default_factory=list)
    slope: float = 0.0
    spread: float = 0.0
    identities_hold: bool = True
    embedding_holds: bool = True
    constant_stable: bool = True

    @property
    def passed(self):
        return self.identities_hold and self.embedding_holds and \
            self.constant_stable


def scaling_check(v, radii, m, r, n, resolution=32, stability=0.05):
    """
    Scaling identities ||d^j u||_{L^r(B_R)} = R^(-j + n/r) ||d^j v||_{L^r(B_1)}
    for u(y) = v(y / R), and the embedding constant
    C(R) = ||u||_{L^t(B_R)} / sum_j R^(j - n/r + n/t) ||d^j u||_{L^r(B_R)}
    with t = S_m(r), which must not depend on R. The weaker bound
    ||u||_{L^t} <= C R^(-m) ||u||_{W^{m,r}} is checked with the largest C.

    Args:
        v (callable): function on the closed unit ball, coordinates (..., n)
        radii (sequence of float): R values in (0, 1]
        m (int): derivative order
        r (float): integrability, r >= 1
        n (int): dimension
        resolution (int): lattice intervals per diameter
        stability (float): allowed relative spread of C over the radii

    Returns:
        ScalingReport

    Example:
        scaling_check(lambda y: y[..., 0], [1, 0.5, 0.25, 0.125], 1, 2, 2)
    """
    t_exp = sobolev_exponent(r, m, n)
    t = float(t_exp)
    n_over_t = 0.0 if math.isinf(t) else n / t
    base, _ = _ball_norms(v, 1.0, n, m, r, t, resolution)
    fine, _ = _ball_norms(v, 1.0, n, m, r, t, 2 * resolution)
    deltas = [abs(a - b) / max(abs(b), 1e-300) for a, b in zip(base, fine)]

    report = ScalingReport(n=n, m=m, r=float(r), t=t)
    sobolev_sums = []
    lt_norms = []
    for R in radii:
        R = float(R)
        norms, lt = _ball_norms(v, R, n, m, r, t, resolution)
        for j, (value, ref) in enumerate(zip(norms, base)):
            expected = R ** (-j + n / r) * ref
            rel = abs(value - expected) / max(abs(expected), 1e-300)
            tol = max(2.0 * deltas[j], 1e-10)
            report.rows.append({"R": R, "order": j, "measured": value,
                                "expected": expected, "relative_error": rel,
                                "tolerance": tol})
            if rel > tol:
                report.identities_hold = False
        scaled = sum(R ** (j - n / r + n_over_t) * value
                     for j, value in enumerate(norms))
        report.constants.append(lt / scaled if scaled > 0 else 0.0)
        sobolev_sums.append(sum(norms))
        lt_norms.append(lt)

    constants = np.asarray(report.constants)
    positive = constants > 0
    if positive.sum() >= 2:
        logs_r = np.log(np.asarray(radii, dtype=float)[positive])
        report.slope = float(np.polyfit(logs_r, np.log(constants[positive]),
                                        1)[0])
        report.spread = float(constants[positive].max() /
                              constants[positive].min() - 1.0)
    report.constant_stable = report.spread <= stability
    c_max = float(constants.max()) if constants.size else 0.0
    for R, lt, w in zip(radii, lt_norms, sobolev_sums):
        if lt > c_max * float(R) ** (-m) * w * (1.0 + 1e-9):
            report.embedding_holds = False
    log.debug("scaling check: C spread %.3g slope %.3g", report.spread,
              report.slope)
    return report


@dataclass
class ComparisonReport:
    inner_contained: bool
    outer_contained: bool
    metric_norm: float
    chart_norm: float
    ratio: float
    factor: float

    @property
    def passed(self):
        return self.inner_contained and self.outer_contained


def sobolev_comparison_check(metric, center, radius, section, m, r,
                             epsilon):
    """
    Compares the metric ball and the metric W^{m,r} norm with their flat
    chart counterparts on an admissible ball.

    Chart distances are measured on the flat grid graph of the same grid,
    so both sides share the stencil. The containments checked are
    B_flat((1 - eps) R) in B_g(R) in B_flat((1 + eps) R), and the
    reported factor is C with metric / chart = 1 + C eps.

    Returns:
        ComparisonReport
    """
    model = metric.model
    flat = build_metric(build_model("flat_torus", model.dimension,
                                    model.periods),
                        metric.grid.shape)
    ball = Ball(tuple(center), float(radius)).mask(metric)
    inner = Ball(tuple(center), (1.0 - epsilon) * radius).mask(flat)
    outer = Ball(tuple(center), (1.0 + epsilon) * radius).mask(flat)
    metric_norm = sobolev_norm(GridSection(section.values, metric.grid,
                                           metric), m, r, metric,
                               ball).value
    chart_norm = sobolev_norm(GridSection(section.values, flat.grid, flat),
                              m, r, flat, ball).value
    ratio = metric_norm / chart_norm if chart_norm > 0 else 1.0
    return ComparisonReport(inner_contained=bool(np.all(ball[inner])),
                            outer_contained=bool(np.all(outer[ball])),
                            metric_norm=metric_norm, chart_norm=chart_norm,
                            ratio=ratio,
                            factor=abs(ratio - 1.0) / epsilon)


@dataclass
class PeterPaulReport:
    m: int
    r: float
    rows: list = field(default_factory=list)

    @property
    def passed(self):
        return all(math.isfinite(row["constant"]) for row in self.rows)


def peter_paul_check(sections, m, r, domain=None, metric=None,
                     eps_values=(0.5, 0.25, 0.125, 0.0625)):
    """
    Measures the smallest C_eps with
    ||u||_{W^{m-1,r}} <= eps ||u||_{W^{m,r}} + C_eps ||u||_{L^r}
    over a family of sections, and C_eps eps^(m-1), which stays bounded
    when C_eps grows like eps^(1-m).

    Returns:
        PeterPaulReport
    """
    triples = []
    for section in sections:
        met = metric if metric is not None else section.metric
        low = sobolev_norm(section, m - 1, r, met, domain).value
        high = sobolev_norm(section, m, r, met, domain).value
        base = sobolev_norm(section, 0, r, met, domain).value
        if base > 0:
            triples.append((low, high, base))
    report = PeterPaulReport(m=m, r=float(r))
    for eps in eps_values:
        constant = max([max(0.0, (low - eps * high) / base)
                        for low, high, base in triples] or [0.0])
        report.rows.append({"epsilon": eps, "constant": constant,
                            "scaled": constant * eps ** (m - 1)})
    return report
