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

from lir_lab.common.exception import BallTooLarge
from lir_lab.elliptic.harmonic import harmonic_basis
from lir_lab.elliptic.operator import hodge_laplacian
from lir_lab.elliptic.series import local_series_solve
from lir_lab.fields.norms import Ball
from lir_lab.fields.section import section_from_function
from ..settings.info import custom_setup, settings

metric = None
op = None
omega = None
result = None


def setup_module():
    global metric, op, omega, result
    options = settings("series")
    metric = custom_setup("series")
    op = hodge_laplacian(metric)
    omega = section_from_function(
        metric, lambda y: 1.0 + np.cos(y[..., 0]) * np.sin(y[..., 1]))
    mask = Ball((0, 0), float(options["radius"])).mask(metric)
    result = local_series_solve(op, omega, mask)


def test_001_smallness():
    options = settings("series")
    assert result.smallness == pytest.approx(float(options["smallness"]),
                                             abs=0.01)
    assert result.smallness <= 0.25


def test_002_trace_contracts():
    assert result.iterations >= 1
    for row in result.trace:
        assert row["h_norm"] <= row["bound"] * (1.0 + 1e-9)
    assert result.trace[-1]["h_norm"] <= 1e-10 * result.trace[0]["h_norm"]


def test_003_extension_orthogonal_and_local():
    basis = harmonic_basis(op)
    coefficients = basis.coefficients(result.extended)
    assert np.max(np.abs(coefficients)) <= 1e-9 * omega.norm()
    mask = Ball((0, 0), float(settings("series")["radius"])).mask(metric)
    assert np.allclose(result.extended.values[mask], omega.values[mask])


def test_004_solution_on_ball():
    mask = Ball((0, 0), float(settings("series")["radius"])).mask(metric)
    residual = op.apply(result.global_solution) - result.extended
    assert residual.norm() <= 1e-8 * result.extended.norm()
    assert np.all(result.solution.values[~mask] == 0)


def test_005_ball_too_large():
    with pytest.raises(BallTooLarge) as err:
        local_series_solve(op, omega, Ball((0, 0), 1.0).mask(metric))
    assert err.value.measured > 0.25
