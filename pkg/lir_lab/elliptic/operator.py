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
This module defines elliptic operators on trivialized rank-N bundles over a
chart grid and the catalogue of model operators.

An operator is D u = sum_alpha A_alpha d^alpha u. Its formal adjoint with
respect to <u, v> = sum u . conj(v) dv is
D* v = (1/w) sum_alpha (-1)^|alpha| d^alpha (w A_alpha^H v), w = dv.
Principal symbols use sigma_xi = sum_{|alpha| = m} A_alpha (i xi)^alpha,
so the nonnegative Laplacian has symbol |xi|^2.
"""
import logging

import numpy as np

from ..common.exception import LirOperationError, RankMismatch
from ..fields.derivatives import multi_partial, partial
from ..fields.section import GridSection

log = logging.getLogger(__name__)

PAULI = (np.array([[0, 1], [1, 0]], dtype=complex),
         np.array([[0, -1j], [1j, 0]], dtype=complex),
         np.array([[1, 0], [0, -1]], dtype=complex))

SIGN_CONVENTION = "Delta = d*d on functions (nonnegative spectrum)"


def _monomial(xi, alpha):
    """prod_i (i xi_i)^alpha_i over the last axis of ``xi``."""
    out = np.ones(xi.shape[:-1], dtype=complex)
    for axis, a in enumerate(alpha):
        if a:
            out = out * (1j * xi[..., axis]) ** a
    return out


class EllipticOperator(object):
    """
    Base class. Subclasses provide ``apply``, ``apply_adjoint`` and
    ``principal_symbols``.
    """
    constant = False

    def __init__(self, metric, order, rank, name):
        self.metric = metric
        self.grid = metric.grid
        self.order = int(order)
        self.rank = int(rank)
        self.name = name
        self.cache = {}

    def __repr__(self):
        return "%s(%s, order=%d, rank=%d)" % (type(self).__name__,
                                              self.name, self.order,
                                              self.rank)

    def _check(self, section):
        if tuple(section.grid.shape) != tuple(self.grid.shape) or \
                section.rank != self.rank:
            raise RankMismatch("apply",
                               "section of shape %s does not fit %s on "
                               "grid %s" % (section.values.shape, self.name,
                                            self.grid.shape))

    def section(self, values):
        return GridSection(values, self.grid, self.metric)

    def apply(self, section):
        raise NotImplementedError

    def apply_adjoint(self, section):
        raise NotImplementedError

    def principal_symbols(self, nodes, xis):
        raise NotImplementedError

    def principal_symbol(self, node, xi):
        """N x N principal symbol at flat node index ``node``."""
        return self.principal_symbols(np.array([int(node)]),
                                      np.asarray(xi, dtype=float)[None])[0]

    def adjoint(self):
        return AdjointOperator(self)

    def c1_bound(self):
        raise NotImplementedError


class ConstantCoefficientOperator(EllipticOperator):
    """
    Constant coefficients on a flat periodic grid, applied per frequency
    through the full symbol D^(kappa) = sum_alpha A_alpha (i kappa)^alpha.
    """
    constant = True

    def __init__(self, metric, order, rank, coefficients, name="D"):
        EllipticOperator.__init__(self, metric, order, rank, name)
        if not metric.model.is_flat or not all(self.grid.periodic):
            raise LirOperationError("ConstantCoefficientOperator",
                                    "needs a flat periodic model")
        self.coefficients = {tuple(alpha): np.asarray(a, dtype=complex)
                             for alpha, a in coefficients.items()}
        for alpha, a in self.coefficients.items():
            if a.shape != (self.rank, self.rank) or \
                    len(alpha) != self.grid.ndim:
                raise RankMismatch("ConstantCoefficientOperator",
                                   "coefficient %s has shape %s"
                                   % (alpha, a.shape))

    @property
    def wave_grid(self):
        if "wave_grid" not in self.cache:
            ks = [self.grid.wavenumbers(axis)
                  for axis in range(self.grid.ndim)]
            self.cache["wave_grid"] = np.stack(np.meshgrid(*ks,
                                                           indexing="ij"),
                                               axis=-1)
        return self.cache["wave_grid"]

    @property
    def symbol(self):
        """Full symbol per frequency, shape ``grid.shape + (N, N)``."""
        if "symbol" not in self.cache:
            kappa = self.wave_grid
            total = np.zeros(self.grid.shape + (self.rank, self.rank),
                             dtype=complex)
            for alpha, a in self.coefficients.items():
                total += _monomial(kappa, alpha)[..., None, None] * a
            self.cache["symbol"] = total
        return self.cache["symbol"]

    def _spectral(self, section, symbol):
        self._check(section)
        axes = tuple(range(self.grid.ndim))
        spectrum = np.fft.fftn(section.values, axes=axes)
        spectrum = np.einsum("...ij,...j->...i", symbol, spectrum)
        return self.section(np.fft.ifftn(spectrum, axes=axes))

    def apply(self, section):
        return self._spectral(section, self.symbol)

    def apply_adjoint(self, section):
        return self._spectral(section,
                              np.conj(np.swapaxes(self.symbol, -1, -2)))

    def principal_symbols(self, nodes, xis):
        xis = np.asarray(xis, dtype=float)
        total = np.zeros((xis.shape[0], self.rank, self.rank),
                         dtype=complex)
        for alpha, a in self.coefficients.items():
            if sum(alpha) == self.order:
                total += _monomial(xis, alpha)[:, None, None] * a
        return total

    def adjoint(self):
        coefficients = {alpha: (-1) ** sum(alpha) * np.conj(a.T)
                        for alpha, a in self.coefficients.items()}
        return ConstantCoefficientOperator(self.metric, self.order,
                                           self.rank, coefficients,
                                           name=self.name + "*")

    def c1_bound(self):
        return max(float(np.linalg.norm(a, 2))
                   for a in self.coefficients.values())


class VariableCoefficientOperator(EllipticOperator):
    """
    Coefficient fields A_alpha(x) of shape ``grid.shape + (N, N)`` applied
    with spectral chart partials.
    """

    def __init__(self, metric, order, rank, coefficients, name="D"):
        EllipticOperator.__init__(self, metric, order, rank, name)
        shape = self.grid.shape + (self.rank, self.rank)
        self.coefficients = {}
        for alpha, a in coefficients.items():
            a = np.asarray(a, dtype=complex)
            if a.shape == (self.rank, self.rank):
                a = np.broadcast_to(a, shape).copy()
            if a.shape != shape:
                raise RankMismatch("VariableCoefficientOperator",
                                   "coefficient %s has shape %s"
                                   % (alpha, a.shape))
            self.coefficients[tuple(alpha)] = a

    def apply(self, section):
        self._check(section)
        out = np.zeros_like(section.values)
        for alpha, a in self.coefficients.items():
            derivative = multi_partial(section.values, self.grid, alpha)
            out += np.einsum("...ij,...j->...i", a, derivative)
        return self.section(out)

    def apply_adjoint(self, section):
        self._check(section)
        w = self.metric.dv[..., None]
        out = np.zeros_like(section.values)
        for alpha, a in self.coefficients.items():
            inner = w * np.einsum("...ji,...j->...i", np.conj(a),
                                  section.values)
            out += (-1) ** sum(alpha) * multi_partial(inner, self.grid, alpha)
        return self.section(out / w)

    def principal_symbols(self, nodes, xis):
        xis = np.asarray(xis, dtype=float)
        nodes = np.asarray(nodes, dtype=np.int64)
        total = np.zeros((xis.shape[0], self.rank, self.rank),
                         dtype=complex)
        for alpha, a in self.coefficients.items():
            if sum(alpha) == self.order:
                field = a.reshape(-1, self.rank, self.rank)[nodes]
                total += _monomial(xis, alpha)[:, None, None] * field
        return total

    def c1_bound(self):
        bound = 0.0
        for a in self.coefficients.values():
            size = float(np.max(np.abs(a)))
            slope = 0.0
            for axis in range(self.grid.ndim):
                slope = max(slope, float(np.max(np.abs(
                    partial(a, self.grid, axis)))))
            bound = max(bound, size + slope)
        return bound


class AdjointOperator(EllipticOperator):
    """Formal adjoint of an operator; its symbol is sigma^H."""

    def __init__(self, operator):
        EllipticOperator.__init__(self, operator.metric, operator.order,
                                  operator.rank, operator.name + "*")
        self.base = operator
        self.constant = operator.constant

    def apply(self, section):
        return self.base.apply_adjoint(section)

    def apply_adjoint(self, section):
        return self.base.apply(section)

    def principal_symbols(self, nodes, xis):
        return np.conj(np.swapaxes(self.base.principal_symbols(nodes, xis),
                                   -1, -2))

    def adjoint(self):
        return self.base

    def c1_bound(self):
        return self.base.c1_bound()


def apply(operator, section):
    """
    Applies an operator to a section.

    Args:
        operator (EllipticOperator)
        section (GridSection)

    Returns:
        GridSection

    Raises:
        RankMismatch: if the section does not fit the operator

    Example:
        apply(hodge_laplacian(metric), u)
    """
    return operator.apply(section)


def _unit(n, axis, count):
    alpha = [0] * n
    alpha[axis] = count
    return tuple(alpha)


def hodge_laplacian(metric, rank=1, mass=0.0):
    """
    Nonnegative flat Laplacian -sum_i d_i^2 acting componentwise, plus
    ``mass`` times the identity.
    """
    n = metric.grid.ndim
    eye = np.eye(rank)
    coefficients = {_unit(n, axis, 2): -eye for axis in range(n)}
    if mass:
        coefficients[(0,) * n] = mass * eye
    return ConstantCoefficientOperator(metric, 2, rank, coefficients,
                                       name="laplacian")


def dirac_operator(metric):
    """
    Dirac-type operator -i sum_j sigma_j d_j on rank-2 spinors (n <= 3).
    It is self-adjoint with symbol sum_j sigma_j xi_j.
    """
    n = metric.grid.ndim
    if n > 3:
        raise LirOperationError("dirac_operator",
                                "Pauli matrices cover n <= 3, got %d" % n)
    coefficients = {_unit(n, axis, 1): -1j * PAULI[axis]
                    for axis in range(n)}
    return ConstantCoefficientOperator(metric, 1, 2, coefficients,
                                       name="dirac")


def laplace_beltrami(metric, mass=0.0):
    """
    Laplace-Beltrami operator -(1/sqrt g) d_i (sqrt g g^{ij} d_j) of a
    curved metric, expanded as -g^{ij} d_ij + b^j d_j with
    b^j = -(1/sqrt g) d_i (sqrt g g^{ij}).
    """
    grid = metric.grid
    n = grid.ndim
    coefficients = {}
    for i in range(n):
        for j in range(i, n):
            alpha = [0] * n
            alpha[i] += 1
            alpha[j] += 1
            factor = 1.0 if i == j else 2.0
            coefficients[tuple(alpha)] = \
                (-factor * metric.ginv[..., i, j])[..., None, None]
    flux = metric.sqrt_det[..., None, None] * metric.ginv  # [..., i, j]
    for j in range(n):
        divergence = sum(partial(flux[..., i, j], grid, i).real
                         for i in range(n))
        coefficients[_unit(n, j, 1)] = \
            (-divergence / metric.sqrt_det)[..., None, None]
    if mass:
        coefficients[(0,) * n] = np.full(grid.shape + (1, 1), mass)
    return VariableCoefficientOperator(metric, 2, 1, coefficients,
                                       name="laplace_beltrami")


def degenerate_operator(metric):
    """d^2/dx_1^2 alone; not elliptic for n >= 2."""
    n = metric.grid.ndim
    return ConstantCoefficientOperator(metric, 2, 1,
                                       {_unit(n, 0, 2): np.eye(1)},
                                       name="degenerate")


OPERATORS = {
    "laplacian": hodge_laplacian,
    "dirac": dirac_operator,
    "laplace_beltrami": laplace_beltrami,
    "degenerate": degenerate_operator,
}


def build_operator(kind, metric, mass=0.0, rank=1):
    """
    Builds an operator of the catalogue by name.

    Args:
        kind (string): ["laplacian", "dirac", "laplace_beltrami",
                       "degenerate"]
        metric (MetricField)
        mass (float): zeroth order term (laplacian, laplace_beltrami)
        rank (int): bundle rank (laplacian)

    Returns:
        EllipticOperator
    """
    if kind not in OPERATORS:
        raise LirOperationError("build_operator",
                                "unknown operator '%s'" % kind)
    log.debug("building %s operator on grid %s", kind, metric.grid.shape)
    if kind == "laplacian":
        if not metric.model.is_flat:
            return laplace_beltrami(metric, mass)
        return hodge_laplacian(metric, rank=rank, mass=mass)
    if kind == "laplace_beltrami":
        return laplace_beltrami(metric, mass)
    return OPERATORS[kind](metric)
