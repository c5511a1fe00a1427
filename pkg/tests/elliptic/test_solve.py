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

from lir_lab.common.exception import NotOrthogonal
from lir_lab.elliptic.harmonic import harmonic_basis, harmonic_projection
from lir_lab.elliptic.operator import dirac_operator, hodge_laplacian, \
    laplace_beltrami
from lir_lab.elliptic.solve import adjoint_solve, decomposition_check, \
    min_norm_solve
from lir_lab.fields.section import section_from_function
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model
from ..settings.info import settings

dirac = None


def setup_module():
    global dirac
    options = settings("dirac_3d")
    shape = tuple(int(n) for n in options["grid"].split("x"))
    dirac = dirac_operator(build_metric(build_model("flat_torus", 3), shape))


def _orthogonal_data(op, seed):
    rng = np.random.default_rng(seed)
    omega = op.section(rng.standard_normal(op.grid.shape + (op.rank,)))
    return omega - harmonic_projection(omega, harmonic_basis(op))


def test_001_cosine_mode():
    options = settings("solver_1d")
    k = int(options["mode"])
    metric = build_metric(build_model("flat_torus", 1), int(options["grid"]))
    omega = section_from_function(metric, lambda y: np.cos(k * y[..., 0]))
    u = min_norm_solve(hodge_laplacian(metric), omega)
    expected = np.cos(k * metric.grid.coordinates[..., 0]) / k ** 2
    error = np.max(np.abs(u.values[..., 0] - expected))
    assert error <= float(options["tolerance"])


def test_002_dirac_residual():
    options = settings("dirac_3d")
    for seed in range(int(options["samples"])):
        omega = _orthogonal_data(dirac, seed)
        u = min_norm_solve(dirac, omega)
        residual = (dirac.apply(u) - omega).norm() / omega.norm()
        assert residual <= float(options["residual"])
        # minimum norm: u carries no kernel component
        assert np.max(np.abs(harmonic_basis(dirac).coefficients(u))) <= \
            1e-10 * u.norm()


def test_003_not_orthogonal():
    metric = build_metric(build_model("flat_torus", 1), 64)
    ones = section_from_function(metric, lambda y: np.ones(y.shape[:-1]))
    with pytest.raises(NotOrthogonal) as err:
        min_norm_solve(hodge_laplacian(metric), ones)
    assert err.value.max_inner > 0


def test_004_iterative_path():
    metric = build_metric(build_model("bumpy_torus", 2, amplitude=0.2),
                          (32, 32))
    op = laplace_beltrami(metric, mass=0.0)
    omega = _orthogonal_data(op, 11)
    u = min_norm_solve(op, omega)
    residual = (op.apply(u) - omega).norm() / omega.norm()
    assert residual <= 1e-8


def test_005_adjoint_solve():
    g = _orthogonal_data(dirac, 21)
    v = adjoint_solve(dirac, g)
    assert (dirac.apply_adjoint(v) - g).norm() <= 1e-9 * g.norm()


def test_006_direct_decomposition():
    rng = np.random.default_rng(31)
    for i in range(int(settings("dirac_3d")["samples"])):
        v = dirac.section(rng.standard_normal(dirac.grid.shape + (2,)))
        harmonic, u, report = decomposition_check(dirac, v, seed=i)
        assert report.passed()
        assert np.allclose((harmonic + dirac.apply(u)).values, v.values)


def test_007_solution_is_linear():
    first = _orthogonal_data(dirac, 41)
    second = _orthogonal_data(dirac, 42)
    combined = first * 2.0 - second * 0.5
    lhs = min_norm_solve(dirac, combined)
    rhs = min_norm_solve(dirac, first) * 2.0 - \
        min_norm_solve(dirac, second) * 0.5
    assert (lhs - rhs).norm() <= 1e-10 * lhs.norm()


def test_008_projection_is_idempotent():
    rng = np.random.default_rng(51)
    basis = harmonic_basis(dirac)
    v = dirac.section(rng.standard_normal(dirac.grid.shape + (2,)))
    once = harmonic_projection(v, basis)
    twice = harmonic_projection(once, basis)
    assert once.norm() > 0
    assert (twice - once).norm() <= 1e-12 * once.norm()
    assert harmonic_projection(v - once, basis).norm() <= 1e-12 * v.norm()


def test_009_eigensolver_projection_is_idempotent():
    metric = build_metric(build_model("bumpy_torus", 2, amplitude=0.2),
                          (32, 32))
    op = laplace_beltrami(metric, mass=0.0)
    basis = harmonic_basis(op)
    rng = np.random.default_rng(52)
    v = op.section(rng.standard_normal(op.grid.shape + (1,)))
    once = harmonic_projection(v, basis)
    twice = harmonic_projection(once, basis)
    assert (twice - once).norm() <= 1e-8 * max(once.norm(), 1e-300)
