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
This module audits the ellipticity of an operator by sampling its principal
symbol over points and unit covectors.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..common.exception import NotElliptic
from ..common.utils import make_rng, node_of

log = logging.getLogger(__name__)

SINGULAR_RTOL = 1e-12
CONDITION_CAP = 1e8


@dataclass
class AuditReport:
    samples: int
    min_symbol_norm: float
    max_symbol_norm: float
    min_inverse_norm: float
    max_inverse_norm: float
    max_condition: float
    c1_bound: float
    cap: float
    passed: bool

    def as_dict(self):
        return dict(self.__dict__)


def ellipticity_audit(operator, samples=1000, seed=0, cap=CONDITION_CAP):
    """
    Samples sigma_xi(x) at random nodes and unit covectors, plus every
    coordinate direction, and records the bounds of ||sigma|| and
    ||sigma^-1||.

    Args:
        operator (EllipticOperator)
        samples (int): random samples, at least 1000
        seed (int)
        cap (float): bound on the condition number and on ||sigma^-1||

    Returns:
        AuditReport; ``passed`` is False when the cap is exceeded

    Raises:
        NotElliptic: at the first sample where sigma_xi is singular

    Example:
        ellipticity_audit(dirac_operator(metric)).max_inverse_norm  # 1.0
    """
    samples = max(int(samples), 1000)
    grid = operator.grid
    n = grid.ndim
    rng = make_rng(seed)
    nodes = rng.integers(0, grid.size, size=samples)
    xis = rng.standard_normal((samples, n))
    xis /= np.linalg.norm(xis, axis=1, keepdims=True)
    axes = np.vstack([np.eye(n), -np.eye(n)])
    nodes = np.concatenate([np.zeros(len(axes), dtype=np.int64), nodes])
    xis = np.vstack([axes, xis])

    symbols = operator.principal_symbols(nodes, xis)
    singular = np.linalg.svd(symbols, compute_uv=False)
    s_max = singular[:, 0]
    s_min = singular[:, -1]
    bad = s_min <= SINGULAR_RTOL * np.maximum(1.0, s_max)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        x = node_of(grid.shape, nodes[i])
        raise NotElliptic("ellipticity_audit",
                          "principal symbol of %s is singular at x=%s, "
                          "xi=%s" % (operator.name, x, xis[i].tolist()),
                          x=x, xi=tuple(xis[i].tolist()))
    inverse = 1.0 / s_min
    condition = s_max / s_min
    worst = max(float(condition.max()), float(inverse.max()))
    report = AuditReport(samples=len(nodes),
                         min_symbol_norm=float(s_max.min()),
                         max_symbol_norm=float(s_max.max()),
                         min_inverse_norm=float(inverse.min()),
                         max_inverse_norm=float(inverse.max()),
                         max_condition=float(condition.max()),
                         c1_bound=operator.c1_bound(), cap=float(cap),
                         passed=worst <= cap)
    if not report.passed:
        log.warning("%s: symbol bound %.3g exceeds cap %.3g", operator.name,
                    worst, cap)
    return report
