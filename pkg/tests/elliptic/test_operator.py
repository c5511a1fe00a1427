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

from lir_lab.common.exception import LirOperationError, NotElliptic, \
    RankMismatch
from lir_lab.elliptic.audit import ellipticity_audit
from lir_lab.elliptic.harmonic import harmonic_basis, harmonic_projection, \
    kernel_basis
from lir_lab.elliptic.operator import apply, build_operator, \
    dirac_operator, hodge_laplacian, laplace_beltrami
from lir_lab.fields.section import section_from_function
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model

circle = None
torus = None
cube = None
bumpy = None


def setup_module():
    global circle, torus, cube, bumpy
    circle = build_metric(build_model("flat_torus", 1), 128)
    torus = build_metric(build_model("flat_torus", 2), (32, 32))
    cube = build_metric(build_model("flat_torus", 3), (8, 8, 8))
    bumpy = build_metric(build_model("bumpy_torus", 2, amplitude=0.2),
                         (32, 32))


def test_001_laplacian_on_modes():
    u = section_from_function(circle, lambda y: np.cos(3 * y[..., 0]))
    assert np.allclose(apply(hodge_laplacian(circle), u).values,
                       9.0 * u.values)
    massive = hodge_laplacian(circle, mass=2.0)
    assert np.allclose(massive.apply(u).values, 11.0 * u.values)


def test_002_dirac_squares_to_laplacian():
    rng = np.random.default_rng(4)
    u = dirac_operator(cube).section(rng.standard_normal((8, 8, 8, 2)))
    d = dirac_operator(cube)
    square = d.apply(d.apply(u))
    assert np.allclose(square.values,
                       hodge_laplacian(cube, rank=2).apply(u).values)


def test_003_adjointness():
    rng = np.random.default_rng(5)
    for op in (dirac_operator(cube), laplace_beltrami(bumpy)):
        shape = op.grid.shape + (op.rank,)
        u = op.section(rng.standard_normal(shape))
        v = op.section(rng.standard_normal(shape))
        lhs = op.apply(u).inner(v)
        rhs = u.inner(op.apply_adjoint(v))
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)


def test_004_harmonic_dimensions():
    assert len(harmonic_basis(hodge_laplacian(torus))) == 1
    assert len(harmonic_basis(hodge_laplacian(torus, rank=3))) == 3
    assert len(harmonic_basis(hodge_laplacian(torus, mass=1.0))) == 0
    assert len(harmonic_basis(dirac_operator(cube))) == 2
    assert len(kernel_basis(dirac_operator(cube))) == 2
    basis = harmonic_basis(hodge_laplacian(torus))
    assert basis.gram_residual < 1e-12


def test_005_projection_of_constant():
    op = hodge_laplacian(torus)
    basis = harmonic_basis(op)
    ones = section_from_function(torus, lambda y: np.ones(y.shape[:-1]))
    wave = section_from_function(torus, lambda y: np.cos(y[..., 0]))
    assert np.allclose(harmonic_projection(ones + wave, basis).values,
                       ones.values)


def test_006_ellipticity_audit():
    report = ellipticity_audit(dirac_operator(cube))
    assert report.passed
    assert report.max_inverse_norm == pytest.approx(1.0)
    assert report.samples >= 1000
    assert ellipticity_audit(laplace_beltrami(bumpy)).passed
    with pytest.raises(NotElliptic) as err:
        ellipticity_audit(build_operator("degenerate", torus))
    assert err.value.xi is not None


def test_007_catalogue():
    assert build_operator("laplacian", bumpy).name == "laplace_beltrami"
    assert build_operator("dirac", cube).order == 1
    with pytest.raises(LirOperationError):
        build_operator("biharmonic", torus)
    with pytest.raises(RankMismatch):
        hodge_laplacian(torus).apply(
            section_from_function(torus, lambda y: y[..., 0], rank=2))
