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
This module computes minimum norm solutions of D u = omega, adjoint solves
and the harmonic decomposition of a section.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from ..common.exception import NoConvergence, NotOrthogonal
from ..common.utils import make_rng
from .harmonic import harmonic_basis, harmonic_projection, kernel_basis

log = logging.getLogger(__name__)

ORTHOGONALITY_RTOL = 1e-8
RESIDUAL_RTOL = 1e-9
MAX_REFINEMENTS = 20


def check_orthogonal(omega, basis, operation="min_norm_solve"):
    """
    Raises NotOrthogonal unless max_j |<omega, e_j>| <= 1e-8 ||omega||.
    """
    if not len(basis):
        return 0.0
    largest = float(np.max(np.abs(basis.coefficients(omega))))
    if largest > ORTHOGONALITY_RTOL * omega.norm():
        raise NotOrthogonal(operation,
                            "data is not orthogonal to the harmonic space: "
                            "max |<omega, e_j>| = %.3g" % largest,
                            max_inner=largest)
    return largest


def _pseudo_inverse_solve(operator, omega, threshold):
    grid = operator.grid
    axes = tuple(range(grid.ndim))
    spectrum = np.fft.fftn(omega.values, axes=axes)
    u, s, vh = np.linalg.svd(operator.symbol)
    inverse = np.where(s > threshold, 1.0 / np.where(s > threshold, s, 1.0),
                       0.0)
    # D^+ = V diag(1/s) U^H
    step = np.einsum("...ji,...j->...i", np.conj(u), spectrum)
    step = step * inverse
    solution = np.einsum("...ji,...j->...i", np.conj(vh), step)
    return operator.section(np.fft.ifftn(solution, axes=axes))


class _ProjectedOperator(spla.LinearOperator):
    """(I - P_{ker D*}) D (I - P_{ker D}) on flattened section values."""

    def __init__(self, operator, harmonic, kernel):
        self.operator = operator
        self.harmonic = harmonic
        self.kernel = kernel
        self.shape_ = operator.grid.shape + (operator.rank,)
        size = int(np.prod(self.shape_))
        spla.LinearOperator.__init__(self, dtype=complex, shape=(size, size))

    def project(self, section, basis):
        return section - harmonic_projection(section, basis)

    def _matvec(self, x):
        section = self.operator.section(np.reshape(x, self.shape_))
        section = self.project(section, self.kernel)
        image = self.operator.apply(section)
        return self.project(image, self.harmonic).values.ravel()


class _SpectralPreconditioner(spla.LinearOperator):
    """Inverse of (|kappa|^m + 1) per frequency."""

    def __init__(self, operator):
        grid = operator.grid
        self.axes = tuple(range(grid.ndim))
        ks = np.meshgrid(*[grid.wavenumbers(a) for a in self.axes],
                         indexing="ij")
        k2 = sum(k ** 2 for k in ks)
        self.factor = (1.0 / (k2 ** (0.5 * operator.order) + 1.0))[..., None]
        self.shape_ = grid.shape + (operator.rank,)
        size = int(np.prod(self.shape_))
        spla.LinearOperator.__init__(self, dtype=complex, shape=(size, size))

    def _matvec(self, x):
        values = np.reshape(x, self.shape_)
        spectrum = np.fft.fftn(values, axes=self.axes) * self.factor
        return np.fft.ifftn(spectrum, axes=self.axes).ravel()


def _iterative_solve(operator, omega, harmonic, kernel, tol):
    projected = _ProjectedOperator(operator, harmonic, kernel)
    preconditioner = _SpectralPreconditioner(operator)
    scale = omega.norm()
    u = omega.zeros_like()
    history = []
    for _ in range(MAX_REFINEMENTS):
        residual = omega - operator.apply(u)
        history.append(residual.norm() / scale)
        if history[-1] <= tol:
            break
        rhs = projected.project(residual, harmonic).values.ravel()
        x, info = spla.gmres(projected, rhs, M=preconditioner, rtol=1e-11,
                             atol=0.0, restart=60, maxiter=200)
        if info < 0:
            raise NoConvergence("min_norm_solve",
                                "gmres breakdown (info=%d)" % info,
                                history=history)
        step = operator.section(np.reshape(x, projected.shape_))
        u = u + projected.project(step, kernel)
    else:
        residual = omega - operator.apply(u)
        history.append(residual.norm() / scale)
    log.debug("iterative solve residual history %s", history)
    if history[-1] > tol:
        raise NoConvergence("min_norm_solve",
                            "relative residual %.3g above %.1g"
                            % (history[-1], tol), history=history)
    return projected.project(u, kernel)


def min_norm_solve(operator, omega, basis=None, tol=RESIDUAL_RTOL):
    """
    Minimum L^2 norm solution of D u = omega.

    Constant coefficient operators use the per-frequency pseudo-inverse,
    which is exact; other operators run GMRES on the operator projected off
    ker D and ker D*, refined until the relative residual is below ``tol``.

    Args:
        operator (EllipticOperator)
        omega (GridSection): orthogonal to ker D*
        basis (HarmonicBasis): basis of ker D*, computed if None
        tol (float): relative residual target of the iterative path

    Returns:
        GridSection u, orthogonal to ker D

    Raises:
        NotOrthogonal: if omega has a harmonic component
        NoConvergence: if the iterative path stalls

    Example:
        u = min_norm_solve(hodge_laplacian(metric), omega)
    """
    operator._check(omega)
    harmonic = basis if basis is not None else harmonic_basis(operator)
    check_orthogonal(omega, harmonic)
    if omega.norm() == 0.0:
        return omega.zeros_like()
    if operator.constant and hasattr(operator, "symbol"):
        return _pseudo_inverse_solve(operator, omega, harmonic.threshold)
    return _iterative_solve(operator, omega, harmonic,
                            kernel_basis(operator), tol)


def adjoint_solve(operator, g, tol=RESIDUAL_RTOL):
    """
    Minimum norm solution of D* v = g, for g orthogonal to ker D.

    Example:
        v = adjoint_solve(dirac_operator(metric), g)
    """
    return min_norm_solve(operator.adjoint(), g, tol=tol)


@dataclass
class DecompositionReport:
    residual: float
    orthogonality: float
    image_orthogonality: float

    def passed(self, residual_tol=1e-8, orth_tol=1e-10):
        return self.residual <= residual_tol and \
            self.orthogonality <= orth_tol and \
            self.image_orthogonality <= residual_tol


def decomposition_check(operator, section, trials=3, seed=0):
    """
    Splits v = H(v) + D(u) with u = min_norm_solve(D, v - H(v)) and measures
    the relative residual, max_j |<v - H(v), e_j>| / ||v|| and
    |<H(v), D s>| / (||H(v)|| ||D s||) on random sections s.

    Returns:
        (harmonic part, u, DecompositionReport)
    """
    basis = harmonic_basis(operator)
    harmonic = harmonic_projection(section, basis)
    rest = section - harmonic
    scale = max(section.norm(), np.finfo(float).tiny)
    orth = float(np.max(np.abs(basis.coefficients(rest)))) / scale \
        if len(basis) else 0.0
    u = min_norm_solve(operator, rest, basis)
    residual = (section - harmonic - operator.apply(u)).norm() / scale
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(trials):
        trial = operator.section(rng.standard_normal(section.values.shape))
        image = operator.apply(trial)
        denom = harmonic.norm() * image.norm()
        if denom > 0:
            worst = max(worst, abs(harmonic.inner(image)) / denom)
    return harmonic, u, DecompositionReport(residual=residual,
                                            orthogonality=orth,
                                            image_orthogonality=worst)
