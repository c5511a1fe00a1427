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
This module extracts an orthonormal basis of ker D* (the harmonic space)
and projects onto it.

Constant coefficient operators are diagonal in Fourier space, so the
kernel is read off the per-frequency null spaces of D^(kappa)^H. Other
operators go through a spectrally preconditioned Lanczos solve for the
smallest eigenvectors of D D*.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla

from ..common.exception import LirOperationError, ThresholdAmbiguous
from ..fields.section import GridSection

log = logging.getLogger(__name__)

KERNEL_RTOL = 1e-8
AMBIGUITY_FACTOR = 10.0
MAX_RITZ = 64


@dataclass
class HarmonicBasis:
    """
    Orthonormal sections e_1..e_K spanning the discrete kernel of D*.
    """
    sections: list
    threshold: float
    gram_residual: float
    method: str
    near_threshold: list = field(default_factory=list)

    def __len__(self):
        return len(self.sections)

    def __iter__(self):
        return iter(self.sections)

    def __getitem__(self, j):
        return self.sections[j]

    @property
    def size(self):
        return len(self.sections)

    def coefficients(self, section):
        """<section, e_j> for every basis element."""
        return np.array([section.inner(e) for e in self.sections],
                        dtype=complex)


def _gram_residual(sections):
    if not sections:
        return 0.0
    gram = np.array([[a.inner(b) for b in sections] for a in sections])
    return float(np.max(np.abs(gram - np.eye(len(sections)))))


def _check_ambiguity(values, threshold, operation):
    values = np.asarray(values, dtype=float)
    near = values[(values > threshold / AMBIGUITY_FACTOR) &
                  (values <= threshold * AMBIGUITY_FACTOR)]
    if near.size:
        raise ThresholdAmbiguous(operation,
                                 "%d singular values within a factor %g of "
                                 "the kernel threshold %.3g"
                                 % (near.size, AMBIGUITY_FACTOR, threshold),
                                 singular_values=near.tolist())


def _constant_basis(operator):
    symbol = np.conj(np.swapaxes(operator.symbol, -1, -2))  # D*^(kappa)
    grid = operator.grid
    flat = symbol.reshape(-1, operator.rank, operator.rank)
    _, s, vh = np.linalg.svd(flat)
    scale = float(s.max()) if s.size else 0.0
    threshold = KERNEL_RTOL * max(scale, 1.0)
    _check_ambiguity(s.ravel(), threshold, "harmonic_basis")

    coords = grid.coordinates
    kappa = operator.wave_grid.reshape(-1, grid.ndim)
    volume = float(np.sum(grid.cell_weights))
    sections = []
    for freq, j in zip(*np.nonzero(s <= threshold)):
        z = np.conj(vh[freq, j])
        wave = np.exp(1j * (coords @ kappa[freq])) / math.sqrt(volume)
        sections.append(GridSection(wave[..., None] * z, grid,
                                    operator.metric))
    return sections, threshold


def _scaled_operator(operator):
    """
    A = S D D* S^-1 in coordinates x = sqrt(dv) v, preconditioned as
    P^(1/2) A P^(1/2) with P = (|kappa|^(2m) + 1)^-1 per frequency.
    """
    grid = operator.grid
    shape = grid.shape + (operator.rank,)
    root = np.sqrt(operator.metric.dv)[..., None]
    axes = tuple(range(grid.ndim))
    ks = np.meshgrid(*[grid.wavenumbers(a) for a in axes], indexing="ij")
    k2 = sum(k ** 2 for k in ks)
    pre = (1.0 / (k2 ** operator.order + 1.0))[..., None] ** 0.5
    adjoint = operator.adjoint()

    def precondition(values):
        return np.fft.ifftn(np.fft.fftn(values, axes=axes) * pre, axes=axes)

    def to_section(x):
        return GridSection(x.reshape(shape) / root, grid, operator.metric)

    def normal(x):
        v = to_section(precondition(x.reshape(shape)))
        back = operator.apply(adjoint.apply(v))
        return precondition(back.values * root).ravel()

    size = int(np.prod(shape))
    return spla.LinearOperator((size, size), matvec=normal, dtype=complex), \
        precondition, to_section


def _power_norm(operator, iterations=30, seed=0):
    """Estimate of ||D*|| in the dv inner product by power iteration."""
    adjoint = operator.adjoint()
    rng = np.random.default_rng(seed)
    shape = operator.grid.shape + (operator.rank,)
    v = GridSection(rng.standard_normal(shape), operator.grid,
                    operator.metric)
    v = v * (1.0 / v.norm())
    estimate = 0.0
    for _ in range(iterations):
        w = operator.apply(adjoint.apply(v))
        norm = w.norm()
        if norm == 0.0:
            return 0.0
        estimate = math.sqrt(norm)
        v = w * (1.0 / norm)
    return estimate


def _variable_basis(operator):
    grid = operator.grid
    shape = grid.shape + (operator.rank,)
    size = int(np.prod(shape))
    a_op, precondition, to_section = _scaled_operator(operator)
    adjoint = operator.adjoint()
    threshold = KERNEL_RTOL * max(_power_norm(operator), 1.0)
    start = np.random.default_rng(0).standard_normal(size).astype(complex)
    wanted = max(4, operator.rank + 2)
    while True:
        k = min(wanted, size - 2)
        try:
            _, vectors = spla.eigsh(a_op, k=k, which="SA", tol=1e-10,
                                    v0=start, maxiter=20 * size)
        except spla.ArpackNoConvergence as err:
            log.warning("harmonic_basis: %d of %d Ritz pairs converged",
                        err.eigenvectors.shape[1], k)
            vectors = err.eigenvectors
        candidates = []
        residuals = []
        for i in range(vectors.shape[1]):
            x = precondition(vectors[:, i].reshape(shape)).ravel()
            v = to_section(x)
            v = v * (1.0 / v.norm())
            residual = adjoint.apply(v).norm()
            residuals.append(residual)
            if residual <= threshold:
                candidates.append(v)
        if len(candidates) < k or wanted >= MAX_RITZ or k >= size - 2:
            break
        wanted *= 2
    _check_ambiguity(residuals, threshold, "harmonic_basis")
    sections = []
    for v in candidates:
        for e in sections:
            v = v - e * v.inner(e)
        norm = v.norm()
        if norm > 1e-8:
            sections.append(v * (1.0 / norm))
    return sections, threshold


def harmonic_basis(operator):
    """
    Orthonormal basis of the discrete kernel of D*.

    Args:
        operator (EllipticOperator)

    Returns:
        HarmonicBasis, cached on the operator

    Raises:
        ThresholdAmbiguous: if singular values crowd the kernel threshold

    Example:
        len(harmonic_basis(hodge_laplacian(metric)))  # 1
    """
    if "harmonic_basis" in operator.cache:
        return operator.cache["harmonic_basis"]
    if operator.constant:
        sections, threshold = _constant_basis(operator)
        method = "symbol"
    else:
        sections, threshold = _variable_basis(operator)
        method = "lanczos"
    basis = HarmonicBasis(sections=sections, threshold=threshold,
                          gram_residual=_gram_residual(sections),
                          method=method)
    log.info("%s: harmonic space of dimension %d (%s)", operator.name,
             len(basis), method)
    operator.cache["harmonic_basis"] = basis
    return basis


def kernel_basis(operator):
    """Orthonormal basis of ker D, the harmonic basis of D*."""
    if "kernel_basis" not in operator.cache:
        operator.cache["kernel_basis"] = harmonic_basis(operator.adjoint())
    return operator.cache["kernel_basis"]


def harmonic_projection(section, basis):
    """
    H(v) = sum_j <v, e_j> e_j.

    Args:
        section (GridSection)
        basis (HarmonicBasis)

    Returns:
        GridSection
    """
    out = section.zeros_like()
    for e in basis:
        if e.values.shape != section.values.shape:
            raise LirOperationError("harmonic_projection",
                                    "basis and section shapes differ")
        out = out + e * section.inner(e)
    return out
