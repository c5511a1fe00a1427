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
This module samples the metric of a model manifold on a uniform chart grid.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..common.exception import InvalidModel
from .model import BUMPY_TORUS

log = logging.getLogger(__name__)

MIN_RESOLUTION = 4


@dataclass(frozen=True)
class Grid:
    """
    Uniform chart grid. Periodic axes carry nodes x_j = j P / N, a boundary
    axis carries N nodes including both ends of [0, L].
    """
    shape: tuple
    lengths: tuple
    periodic: tuple

    @property
    def ndim(self):
        return len(self.shape)

    @property
    def size(self):
        return int(np.prod(self.shape))

    @property
    def volume(self):
        return float(np.prod(self.lengths))

    @cached_property
    def spacing(self):
        return tuple(length / n if per else length / (n - 1)
                     for n, length, per in zip(self.shape, self.lengths,
                                               self.periodic))

    @cached_property
    def axes(self):
        return tuple(np.arange(n) * h
                     for n, h in zip(self.shape, self.spacing))

    @cached_property
    def coordinates(self):
        """Node coordinates, shape ``shape + (ndim,)``."""
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)

    @cached_property
    def cell_weights(self):
        """Quadrature weight of each node; trapezoid ends on boundary
        axes."""
        weights = np.ones(self.shape)
        for axis, (n, h, per) in enumerate(zip(self.shape, self.spacing,
                                               self.periodic)):
            w = np.full(n, h)
            if not per:
                w[0] = w[-1] = 0.5 * h
            view = [1] * self.ndim
            view[axis] = n
            weights = weights * w.reshape(view)
        return weights

    def wavenumbers(self, axis):
        """Angular wavenumbers 2 pi fftfreq(N, h) of a periodic axis."""
        return 2.0 * math.pi * np.fft.fftfreq(self.shape[axis],
                                              d=self.spacing[axis])

    def refined(self, factor=2):
        shape = tuple(n * factor if per else (n - 1) * factor + 1
                      for n, per in zip(self.shape, self.periodic))
        return Grid(shape=shape, lengths=self.lengths,
                    periodic=self.periodic)


class MetricField(object):
    """
    Conformally flat metric g_ij = c(y) delta_ij sampled on a grid together
    with its chart derivatives, its inverse and the volume density.

    The model is kept so the metric can also be evaluated off-grid (edge
    midpoints, ball samples) from its closed form.
    """

    def __init__(self, model, grid):
        self.model = model
        self.grid = grid
        n = grid.ndim
        eye = np.eye(n)
        coords = grid.coordinates

        self.conformal = self.conformal_at(coords)
        self.g = self.conformal[..., None, None] * eye
        self.ginv = (1.0 / self.conformal)[..., None, None] * eye
        self.sqrt_det = self.conformal ** (0.5 * n)

        # dg[..., k, i, j] = d_k g_ij
        first = self.conformal_derivative_at(coords, 1)
        kappa = np.asarray(model.wave_vector)
        self.dg = (first[..., None] * kappa)[..., :, None, None] * eye
        self.cache = {}

    @property
    def dimension(self):
        return self.grid.ndim

    @cached_property
    def dv(self):
        """Riemannian volume weight per node."""
        return self.grid.cell_weights * self.sqrt_det

    def phase_at(self, points):
        kappa = np.asarray(self.model.wave_vector)
        return np.asarray(points) @ kappa

    def conformal_at(self, points):
        points = np.asarray(points, dtype=float)
        if self.model.kind != BUMPY_TORUS:
            return np.ones(points.shape[:-1])
        return 1.0 + self.model.amplitude * np.sin(self.phase_at(points))

    def conformal_derivative_at(self, points, order):
        """
        Common factor a sin(phi + order pi / 2) of every order-``order``
        chart derivative; d^beta c = kappa^beta times this value.
        """
        points = np.asarray(points, dtype=float)
        if self.model.kind != BUMPY_TORUS:
            return np.zeros(points.shape[:-1])
        return self.model.amplitude * np.sin(self.phase_at(points) +
                                             0.5 * order * math.pi)

    def line_element(self, points, delta):
        """Length sqrt(delta^T g delta) of chart step ``delta`` at
        ``points``."""
        delta = np.asarray(delta, dtype=float)
        return np.sqrt(self.conformal_at(points)) * \
            np.linalg.norm(delta, axis=-1)


def build_metric(model, resolution):
    """
    Samples the analytic metric of a model on its chart grid.

    Args:
        model (ManifoldModel)
        resolution (int or sequence of int): nodes per axis, each >= 4

    Returns:
        MetricField

    Raises:
        InvalidModel: if the resolution is too small or of the wrong length

    Example:
        build_metric(build_model("flat_torus", 2), (64, 64))
    """
    if np.isscalar(resolution):
        resolution = (int(resolution),) * model.dimension
    resolution = tuple(int(n) for n in resolution)
    if len(resolution) != model.dimension:
        raise InvalidModel("build_metric",
                           "resolution has %d axes, model has %d"
                           % (len(resolution), model.dimension))
    if min(resolution) < MIN_RESOLUTION:
        raise InvalidModel("build_metric",
                           "resolution %s below %d nodes per axis"
                           % (resolution, MIN_RESOLUTION))
    if abs(model.amplitude) >= 1.0:
        raise InvalidModel("build_metric", "metric is not positive")
    grid = Grid(shape=resolution, lengths=model.periods,
                periodic=model.periodic)
    log.debug("metric %s on grid %s", model.kind, resolution)
    return MetricField(model, grid)
