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
This module describes the model manifolds the laboratory works on: flat
tori, conformally bumpy tori and flat cylinders with boundary.
"""
import math
from dataclasses import dataclass

from ..common.exception import InvalidModel

FLAT_TORUS = "flat_torus"
BUMPY_TORUS = "bumpy_torus"
CYLINDER = "cylinder_with_boundary"

MODEL_KINDS = (FLAT_TORUS, BUMPY_TORUS, CYLINDER)


@dataclass(frozen=True)
class ManifoldModel:
    """
    A model manifold in its canonical chart.

    For the cylinder the last axis is the boundary interval [0, L] and
    ``periods[-1]`` holds L; every other axis is periodic.
    """
    kind: str
    dimension: int
    periods: tuple
    amplitude: float = 0.0
    frequency: tuple = ()
    boundary_length: float = None

    @property
    def periodic(self):
        flags = [True] * self.dimension
        if self.kind == CYLINDER:
            flags[-1] = False
        return tuple(flags)

    @property
    def is_flat(self):
        return self.kind != BUMPY_TORUS or self.amplitude == 0.0

    @property
    def wave_vector(self):
        """kappa_i = 2 pi k_i / P_i, the phase gradient of the bump."""
        if self.kind != BUMPY_TORUS:
            return (0.0,) * self.dimension
        return tuple(2.0 * math.pi * k / p
                     for k, p in zip(self.frequency, self.periods))

    @property
    def chart_radius(self):
        """Half the smallest period, the radius up to which the chart is
        injective."""
        return 0.5 * min(self.periods)

    @property
    def volume(self):
        return math.prod(self.periods)


def build_model(kind, dimension, periods=None, amplitude=0.0,
                frequency=None, boundary_length=None):
    """
    Validates a model descriptor and returns the ManifoldModel.

    Args:
        kind (string): one of ["flat_torus", "bumpy_torus",
                       "cylinder_with_boundary"]
        dimension (int): n >= 1
        periods (sequence of float): period per axis, default 2 pi
        amplitude (float): bump amplitude a, |a| < 1 (bumpy_torus only)
        frequency (sequence of int): bump frequency vector (bumpy_torus)
        boundary_length (float): L of the boundary axis (cylinder only)

    Returns:
        ManifoldModel

    Raises:
        InvalidModel: on any violated model invariant

    Example:
        build_model("bumpy_torus", 1, amplitude=0.05, frequency=[1])
    """
    if kind not in MODEL_KINDS:
        raise InvalidModel("build_model", "unknown manifold kind '%s'" % kind)
    dimension = int(dimension)
    if dimension < 1:
        raise InvalidModel("build_model",
                           "dimension must be >= 1, got %d" % dimension)
    if periods is None:
        periods = [2.0 * math.pi] * dimension
    periods = [float(p) for p in periods]
    if kind == CYLINDER:
        if boundary_length is None:
            raise InvalidModel("build_model",
                               "cylinder requires a boundary_length")
        if len(periods) == dimension - 1:
            periods = periods + [float(boundary_length)]
        periods[-1] = float(boundary_length)
    if len(periods) != dimension:
        raise InvalidModel("build_model",
                           "expected %d periods, got %d"
                           % (dimension, len(periods)))
    if any(not p > 0 for p in periods):
        raise InvalidModel("build_model", "periods must be positive")

    amplitude = float(amplitude)
    if kind == BUMPY_TORUS:
        if abs(amplitude) >= 1.0:
            raise InvalidModel("build_model",
                               "bump amplitude |a| = %g must be < 1"
                               % abs(amplitude))
        if frequency is None:
            frequency = [1] + [0] * (dimension - 1)
        frequency = tuple(int(k) for k in frequency)
        if len(frequency) != dimension:
            raise InvalidModel("build_model",
                               "frequency vector must have %d entries"
                               % dimension)
    else:
        amplitude = 0.0
        frequency = (0,) * dimension

    return ManifoldModel(kind=kind, dimension=dimension,
                         periods=tuple(periods), amplitude=amplitude,
                         frequency=frequency,
                         boundary_length=(float(boundary_length)
                                          if kind == CYLINDER else None))
