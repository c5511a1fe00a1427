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
This module solves boundary value problems on the flat cylinder
N = S^1 x [0, L] through its double.

The double Gamma is the flat torus S^1 x (circle of length 2(L + delta)).
N sits in Gamma as the rows 0..n_L of the grid, so every node of N is a
node of Gamma with the same metric. Data on N is extended to Gamma
orthogonally to the harmonic space, solved there, and restricted back.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..common.exception import GramSingular, GridMisaligned, \
    InvalidModel, NotOrthogonal
from ..elliptic.harmonic import harmonic_basis
from ..elliptic.operator import VariableCoefficientOperator
from ..elliptic.solve import min_norm_solve
from ..fields.norms import lp_norm, sobolev_norm
from ..fields.section import GridSection
from ..geometry.metric import build_metric
from ..geometry.model import CYLINDER, FLAT_TORUS, build_model

log = logging.getLogger(__name__)

ALIGN_TOL = 1e-9
GRAM_CONDITION_CAP = 1e8
ORTHOGONALITY_RTOL = 1e-10
EDGE_ROWS = 2


@dataclass
class DoubledDomain:
    """
    The double of S^1 x [0, L] with margin delta.

    ``inside`` is the indicator of N on the grid of Gamma and ``rows`` the
    index of the last row of N.
    """
    length: float
    margin: float
    gamma: object
    cylinder: object
    rows: int
    inside: np.ndarray = field(repr=False)

    @property
    def outside(self):
        return ~self.inside

    @property
    def circumference(self):
        return 2.0 * (self.length + self.margin)

    @property
    def volume_ratio(self):
        """vol Gamma over vol of S^1 x [0, L + delta]; 2 for the double."""
        return self.gamma.grid.volume / (self.gamma.grid.lengths[0] *
                                         (self.length + self.margin))

    @property
    def outside_volume(self):
        return float(np.sum(self.gamma.dv[self.outside]))

    def embed(self, section):
        """Extends a section on N by zero to Gamma."""
        if tuple(section.grid.shape) == tuple(self.gamma.grid.shape):
            return section.restrict(self.inside)
        values = np.zeros(self.gamma.grid.shape + (section.rank,),
                          dtype=complex)
        values[:, :self.rows + 1] = section.values
        return GridSection(values, self.gamma.grid, self.gamma)

    def restrict(self, section):
        """The rows of N of a section on Gamma, on the cylinder grid."""
        return GridSection(section.values[:, :self.rows + 1],
                           self.cylinder.grid, self.cylinder)


def build_double(length, margin, grid, circle_period=2.0 * math.pi):
    """
    Builds the double of S^1 x [0, L].

    Args:
        length (float): L > 0
        margin (float): delta >= 0; delta = 0 doubles N itself
        grid (tuple of int): (n_x, n_y), nodes of Gamma per axis
        circle_period (float): period of the S^1 factor

    Returns:
        DoubledDomain

    Raises:
        GridMisaligned: if L is not a whole number of grid steps of Gamma
        InvalidModel: on nonpositive L, negative delta, or an empty
                      complement of N

    Example:
        build_double(math.pi, math.pi / 8, (64, 72))  # 32 steps in N
    """
    length, margin = float(length), float(margin)
    if not length > 0.0 or margin < 0.0:
        raise InvalidModel("build_double",
                           "need L > 0 and delta >= 0, got L=%g delta=%g"
                           % (length, margin))
    n_x, n_y = (int(v) for v in grid)
    circumference = 2.0 * (length + margin)
    step = circumference / n_y
    steps = length / step
    rows = int(round(steps))
    if abs(steps - rows) > ALIGN_TOL * max(1.0, steps):
        raise GridMisaligned("build_double",
                             "L = %g is %.6g grid steps of %g, not a whole "
                             "number" % (length, steps, step))
    if rows + 1 >= n_y:
        raise InvalidModel("build_double",
                           "the complement of N has no grid rows")
    gamma = build_metric(build_model(FLAT_TORUS, 2,
                                     periods=[circle_period, circumference]),
                         (n_x, n_y))
    cylinder = build_metric(build_model(CYLINDER, 2, periods=[circle_period],
                                        boundary_length=length),
                            (n_x, rows + 1))
    inside = np.zeros((n_x, n_y), dtype=bool)
    inside[:, :rows + 1] = True
    log.debug("double of [0, %g] with margin %g: %d of %d rows inside",
              length, margin, rows + 1, n_y)
    return DoubledDomain(length=length, margin=margin, gamma=gamma,
                         cylinder=cylinder, rows=rows, inside=inside)


@dataclass
class ExtensionResult:
    section: GridSection
    lambdas: np.ndarray
    mus: np.ndarray
    gram: np.ndarray
    condition: float
    max_inner: float

    def as_dict(self):
        return {"lambda": [complex(v).real for v in self.lambdas],
                "lambda_imag": [complex(v).imag for v in self.lambdas],
                "mu": [complex(v).real for v in self.mus],
                "mu_imag": [complex(v).imag for v in self.mus],
                "gram_condition": self.condition,
                "max_inner": self.max_inner,
                "tolerance": ORTHOGONALITY_RTOL}


def orthogonal_extension(domain, omega, basis):
    """
    Extends omega from N to Gamma so that it is orthogonal to every e_j.

    With lambda_j = <omega 1_N, e_j> and the Gram matrix
    gamma_jk = <e_k 1_{Gamma \\ N}, e_j 1_{Gamma \\ N}>, solves
    gamma mu = lambda and sets omega' = omega 1_N - sum_k mu_k e_k
    1_{Gamma \\ N}.

    Args:
        domain (DoubledDomain)
        omega (GridSection): on the cylinder grid, or on Gamma
        basis (HarmonicBasis): harmonic basis on Gamma

    Returns:
        ExtensionResult; ``section`` is omega'

    Raises:
        GramSingular: if the Gram matrix has condition number >= 1e8
        NotOrthogonal: if omega' keeps a harmonic component
    """
    inner = domain.embed(omega)
    lambdas = basis.coefficients(inner)
    count = len(basis)
    if not count:
        return ExtensionResult(section=inner, lambdas=lambdas,
                               mus=np.zeros(0), gram=np.zeros((0, 0)),
                               condition=1.0, max_inner=0.0)
    outer = [e.restrict(domain.outside) for e in basis]
    gram = np.array([[outer[k].inner(outer[j]) for k in range(count)]
                     for j in range(count)])
    condition = float(np.linalg.cond(gram))
    if not condition < GRAM_CONDITION_CAP:
        raise GramSingular("orthogonal_extension",
                           "Gram matrix of the harmonic basis off N has "
                           "condition number %.3g" % condition,
                           condition=condition)
    mus = np.linalg.solve(gram, lambdas)
    extended = inner
    for k in range(count):
        extended = extended - outer[k] * mus[k]
    scale = max(inner.norm() * max(e.norm() for e in basis),
                np.finfo(float).tiny)
    max_inner = float(np.max(np.abs(basis.coefficients(extended))))
    if max_inner > ORTHOGONALITY_RTOL * scale:
        raise NotOrthogonal("orthogonal_extension",
                            "max |<omega', e_j>| = %.3g" % max_inner,
                            max_inner=max_inner)
    log.debug("extension: Gram condition %.3g, max inner %.3g", condition,
              max_inner)
    return ExtensionResult(section=extended, lambdas=lambdas, mus=mus,
                           gram=gram, condition=condition,
                           max_inner=max_inner)


@dataclass
class BoundaryResult:
    solution: GridSection
    extension: ExtensionResult
    spectral_residual: float
    difference_residual: float
    sobolev_ratio: float
    resolution: tuple

    def as_dict(self):
        return {"resolution": list(self.resolution),
                "spectral_residual": self.spectral_residual,
                "difference_residual": self.difference_residual,
                "sobolev_ratio": self.sobolev_ratio,
                "extension": self.extension.as_dict()}


def _interior_residual(lhs, rhs, first, last):
    """max |lhs - rhs| / max |rhs| over rows first..last of the y axis."""
    diff = np.abs(lhs.values - rhs.values)[:, first:last + 1]
    scale = float(np.max(np.abs(rhs.values)))
    if scale == 0.0:
        return float(diff.max())
    return float(diff.max()) / scale


def boundary_solve(operator, domain, omega, r=2.0, basis=None):
    """
    Solves D u = omega on N through the double.

    Args:
        operator (EllipticOperator): constant coefficient operator on the
                                     metric of Gamma
        domain (DoubledDomain)
        omega (GridSection): on the cylinder grid
        r (float): exponent of the reported W^{m,r} / L^r ratio
        basis (HarmonicBasis): harmonic basis on Gamma, computed if None

    Returns:
        BoundaryResult with u on N, the spectral residual on the interior
        rows of N, an independent finite difference residual on the
        cylinder grid away from its edges, and ||u||_{W^{m,r}(N)} /
        ||omega||_{L^r(N)}

    Raises:
        GramSingular, NotOrthogonal: from orthogonal_extension

    Example:
        result = boundary_solve(hodge_laplacian(domain.gamma), domain, omega)
    """
    basis = basis if basis is not None else harmonic_basis(operator)
    extension = orthogonal_extension(domain, omega, basis)
    solution = min_norm_solve(operator, extension.section, basis)
    spectral = _interior_residual(operator.apply(solution),
                                  domain.embed(omega), 1, domain.rows - 1)
    u = domain.restrict(solution)
    local = VariableCoefficientOperator(domain.cylinder, operator.order,
                                        operator.rank,
                                        operator.coefficients,
                                        name=operator.name + "[N]")
    difference = _interior_residual(local.apply(u), omega, EDGE_ROWS,
                                    domain.rows - EDGE_ROWS)
    norm = lp_norm(omega, r, metric=domain.cylinder).value
    ratio = sobolev_norm(u, operator.order, r, domain.cylinder).value / norm \
        if norm > 0 else 0.0
    log.info("boundary solve at %s: spectral residual %.3g, difference "
             "residual %.3g", domain.gamma.grid.shape, spectral, difference)
    return BoundaryResult(solution=u, extension=extension,
                          spectral_residual=spectral,
                          difference_residual=difference,
                          sobolev_ratio=ratio,
                          resolution=tuple(domain.gamma.grid.shape))
