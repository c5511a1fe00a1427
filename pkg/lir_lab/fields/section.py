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
This module holds GridSection, a C^N valued section sampled on a chart grid.
"""
import csv
from dataclasses import dataclass

import numpy as np

from ..common.exception import LirOperationError, RankMismatch


@dataclass
class GridSection:
    """
    Section values of shape ``grid.shape + (N,)`` on a grid.

    ``metric`` supplies the Riemannian volume weight; without it the flat
    cell weights of the grid are used.
    """
    values: np.ndarray
    grid: object
    metric: object = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape == tuple(self.grid.shape):
            values = values[..., None]
        if values.shape[:-1] != tuple(self.grid.shape):
            raise RankMismatch("GridSection",
                               "values of shape %s do not fit grid %s"
                               % (values.shape, self.grid.shape))
        if not np.all(np.isfinite(values)):
            raise LirOperationError("GridSection", "non-finite values")
        self.values = values

    @property
    def rank(self):
        return self.values.shape[-1]

    @property
    def dv(self):
        if self.metric is not None:
            return self.metric.dv
        return self.grid.cell_weights

    @property
    def modulus(self):
        return np.sqrt(np.sum(np.abs(self.values) ** 2, axis=-1))

    def like(self, values):
        return GridSection(values, self.grid, self.metric)

    def zeros_like(self):
        return self.like(np.zeros_like(self.values))

    def _check(self, other):
        if other.values.shape != self.values.shape:
            raise RankMismatch("GridSection",
                               "shapes %s and %s differ"
                               % (self.values.shape, other.values.shape))

    def inner(self, other):
        """<u, v> = sum u . conj(v) dv."""
        self._check(other)
        return complex(np.sum(np.sum(self.values * np.conj(other.values),
                                     axis=-1) * self.dv))

    def norm(self):
        return float(np.sqrt(np.sum(self.modulus ** 2 * self.dv)))

    def restrict(self, mask):
        """Multiplies by the indicator of ``mask``."""
        weight = np.asarray(mask, dtype=float)[..., None]
        return self.like(self.values * weight)

    def __add__(self, other):
        self._check(other)
        return self.like(self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return self.like(self.values - other.values)

    def __neg__(self):
        return self.like(-self.values)

    def __mul__(self, factor):
        factor = np.asarray(factor)
        if factor.shape == tuple(self.grid.shape):
            factor = factor[..., None]
        return self.like(self.values * factor)

    __rmul__ = __mul__


def section_from_function(metric, func, rank=1):
    """
    Samples ``func(coords)`` on the metric's grid.

    Args:
        metric (MetricField)
        func (callable): maps coordinates ``(..., n)`` to values ``(...)`` or
                         ``(..., rank)``
        rank (int)

    Returns:
        GridSection
    """
    values = np.asarray(func(metric.grid.coordinates), dtype=complex)
    if values.shape == tuple(metric.grid.shape) and rank > 1:
        values = np.repeat(values[..., None], rank, axis=-1)
    return GridSection(values, metric.grid, metric)


def _pad_axis(spectrum, axis, factor):
    n = spectrum.shape[axis]
    m = n * factor
    shape = list(spectrum.shape)
    shape[axis] = m
    out = np.zeros(shape, dtype=complex)
    half = n // 2
    take = [slice(None)] * spectrum.ndim
    put = [slice(None)] * spectrum.ndim
    take[axis] = slice(0, half + (n % 2))
    put[axis] = slice(0, half + (n % 2))
    out[tuple(put)] = spectrum[tuple(take)]
    take[axis] = slice(n - half + (0 if n % 2 else 1), n)
    put[axis] = slice(m - half + (0 if n % 2 else 1), m)
    out[tuple(put)] = spectrum[tuple(take)]
    if n % 2 == 0:
        # split the Nyquist mode so real data stays real
        take[axis] = slice(half, half + 1)
        nyq = spectrum[tuple(take)]
        put[axis] = slice(half, half + 1)
        out[tuple(put)] = 0.5 * nyq
        put[axis] = slice(m - half, m - half + 1)
        out[tuple(put)] = 0.5 * nyq
    return out * factor


def fourier_refine(section, metric, factor=2):
    """
    Band-limited interpolation of a section onto ``metric``'s grid, which
    must be the ``factor`` times finer version of the section's grid.
    """
    grid = section.grid
    if not all(grid.periodic):
        raise LirOperationError("fourier_refine",
                                "spectral refinement needs periodic axes")
    axes = tuple(range(grid.ndim))
    spectrum = np.fft.fftn(section.values, axes=axes)
    for axis in axes:
        spectrum = _pad_axis(spectrum, axis, factor)
    values = np.fft.ifftn(spectrum, axes=axes)
    return GridSection(values, metric.grid, metric)


def write_section_csv(section, path):
    """Node coordinates followed by real and imaginary part per
    component."""
    coords = section.grid.coordinates.reshape(-1, section.grid.ndim)
    values = section.values.reshape(-1, section.rank)
    header = ["x%d" % i for i in range(section.grid.ndim)]
    for j in range(section.rank):
        header += ["re%d" % j, "im%d" % j]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for point, value in zip(coords, values):
            row = ["%.17g" % c for c in point]
            for v in value:
                row += ["%.17g" % v.real, "%.17g" % v.imag]
            writer.writerow(row)


def read_section_csv(metric, path):
    """Reads a section written by ``write_section_csv`` onto ``metric``'s
    grid; rows must come in grid order."""
    n = metric.grid.ndim
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))[1:]
    data = np.array([[float(x) for x in row[n:]] for row in rows])
    if data.shape[0] != metric.grid.size:
        raise LirOperationError("read_section_csv",
                                "%d rows for a grid of %d nodes"
                                % (data.shape[0], metric.grid.size))
    values = data[:, 0::2] + 1j * data[:, 1::2]
    return GridSection(values.reshape(metric.grid.shape + (-1,)),
                       metric.grid, metric)
