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

import numpy as np
import pytest

from lir_lab.fields.derivatives import chart_derivatives, christoffel, \
    covariant_derivatives, multi_indices
from lir_lab.fields.section import section_from_function

from ..settings.info import custom_setup, settings

flat = None
bumpy = None
amplitude = None


def setup_module():
    global flat, bumpy, amplitude
    flat = custom_setup("flat_torus_2d")
    bumpy = custom_setup("bumpy_torus_1d")
    amplitude = float(settings("bumpy_torus_1d")["amplitude"])


def test_001_flat_christoffel_vanishes():
    assert np.max(np.abs(christoffel(flat))) == 0.0


def test_002_conformal_christoffel():
    y = bumpy.grid.coordinates[..., 0]
    expected = 0.5 * amplitude * np.cos(y) / (1.0 + amplitude * np.sin(y))
    gamma = christoffel(bumpy)
    assert np.max(np.abs(gamma[..., 0, 0, 0] - expected)) < 1e-14


def test_003_symmetric_in_lower_indices():
    from lir_lab.geometry.metric import build_metric
    from lir_lab.geometry.model import build_model

    metric = build_metric(build_model("bumpy_torus", 2, amplitude=0.05,
                                      frequency=[1, 2]), (32, 32))
    gamma = christoffel(metric)
    assert np.allclose(gamma, np.swapaxes(gamma, -1, -2))


def test_004_constant_section():
    u = section_from_function(flat, lambda y: np.full(y.shape[:-1], 2.5))
    first, second = covariant_derivatives(u, flat)
    assert np.max(np.abs(first)) < 1e-12
    assert np.max(np.abs(second)) < 1e-12


def test_005_flat_second_derivative():
    u = section_from_function(flat, lambda y: np.sin(y[..., 0]))
    _, second = covariant_derivatives(u, flat)
    x = flat.grid.coordinates[..., 0]
    assert np.max(np.abs(second[..., 0, 0, 0] + np.sin(x))) < 1e-11
    assert np.max(np.abs(second[..., 0, 1, 1])) < 1e-11


def test_006_bumpy_second_derivative():
    u = section_from_function(bumpy, lambda y: np.sin(y[..., 0]))
    first, second = covariant_derivatives(u, bumpy)
    y = bumpy.grid.coordinates[..., 0]
    gamma = 0.5 * amplitude * np.cos(y) / (1.0 + amplitude * np.sin(y))
    expected = -np.sin(y) - gamma * np.cos(y)
    assert np.max(np.abs(first[..., 0, 0] - np.cos(y))) < 1e-11
    assert np.max(np.abs(second[..., 0, 0, 0] - expected)) < 1e-11


def test_007_chart_derivatives_shape():
    u = section_from_function(flat, lambda y: np.cos(y[..., 1]), rank=2)
    assert chart_derivatives(u, 2).shape == (64, 64, 2, 2, 2)
    assert multi_indices(2, 2) == [(2, 0), (1, 1), (0, 2)]


@pytest.mark.parametrize("n, order, count", [(1, 3, 1), (2, 2, 3),
                                             (3, 2, 6)])
def test_008_multi_index_count(n, order, count):
    assert len(multi_indices(n, order)) == count
