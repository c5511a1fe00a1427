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
This module differentiates grid sections: chart partials, Christoffel
symbols and covariant derivatives up to order two.

Periodic axes are differentiated spectrally, boundary axes with second
order finite differences (one-sided at the ends).
"""
import itertools

import numpy as np


def partial(values, grid, axis, count=1):
    """
    ``count``-th chart partial of ``values`` along ``axis``. The trailing
    dimensions of ``values`` beyond the grid are carried along.
    """
    if count == 0:
        return values
    if grid.periodic[axis]:
        k = grid.wavenumbers(axis)
        shape = [1] * values.ndim
        shape[axis] = k.size
        multiplier = ((1j * k) ** count).reshape(shape)
        return np.fft.ifft(np.fft.fft(values, axis=axis) * multiplier,
                           axis=axis)
    out = values
    for _ in range(count):
        out = np.gradient(out, grid.spacing[axis], axis=axis, edge_order=2)
    return out


def multi_partial(values, grid, counts):
    """d^alpha of ``values`` for a multi-index ``counts``."""
    out = values
    for axis, c in enumerate(counts):
        out = partial(out, grid, axis, c)
    return out


def multi_indices(n, order):
    """All multi-indices alpha in N^n with |alpha| = order, sorted."""
    result = []
    for combo in itertools.combinations_with_replacement(range(n), order):
        alpha = [0] * n
        for axis in combo:
            alpha[axis] += 1
        result.append(tuple(alpha))
    return sorted(set(result), reverse=True)


def christoffel(metric):
    """
    Christoffel symbols Gamma[..., k, i, j] =
    1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij).

    Args:
        metric (MetricField)

    Returns:
        ndarray of shape ``grid.shape + (n, n, n)``, symmetric in (i, j)

    Example:
        gamma = christoffel(build_metric(model, 64))
    """
    dg = metric.dg
    first = np.einsum("...ilj->...lij", dg)
    second = np.einsum("...jli->...lij", dg)
    third = np.einsum("...lij->...lij", dg)
    return 0.5 * np.einsum("...kl,...lij->...kij", metric.ginv,
                           first + second - third)


def chart_derivatives(section, order):
    """
    All ordered chart partials of a given order, shape
    ``grid.shape + (N,) + (n,) * order``.
    """
    grid = section.grid
    n = grid.ndim
    values = section.values
    if order == 0:
        return values
    out = np.empty(values.shape + (n,) * order, dtype=complex)
    cache = {}
    for index in itertools.product(range(n), repeat=order):
        counts = tuple(index.count(axis) for axis in range(n))
        if counts not in cache:
            cache[counts] = multi_partial(values, grid, counts)
        out[(Ellipsis,) + index] = cache[counts]
    return out


def covariant_derivatives(section, metric, order=2):
    """
    Covariant derivatives of a trivialized section.

    (nabla u)_j = d_j u and (nabla^2 u)_ij = d_ij u - Gamma^k_ij d_k u.

    Args:
        section (GridSection)
        metric (MetricField)
        order (int): 1 or 2

    Returns:
        list [nabla u] or [nabla u, nabla^2 u] with shapes
        ``grid.shape + (N, n)`` and ``grid.shape + (N, n, n)``
    """
    first = chart_derivatives(section, 1)
    if order == 1:
        return [first]
    second = chart_derivatives(section, 2)
    gamma = christoffel(metric)
    second = second - np.einsum("...kij,...ak->...aij", gamma, first)
    return [first, second]


def tensor_modulus(tensor, metric, order):
    """
    Pointwise modulus of an order-``order`` tensor with values in C^N,
    indices raised with g^{ij}; Euclidean when ``metric`` is None.
    """
    if order == 0:
        return np.sqrt(np.sum(np.abs(tensor) ** 2, axis=-1))
    if metric is None:
        axes = tuple(range(-order - 1, 0))
        return np.sqrt(np.sum(np.abs(tensor) ** 2, axis=axes))
    ginv = metric.ginv
    if order == 1:
        sq = np.einsum("...ij,...ai,...aj->...", ginv, tensor,
                       np.conj(tensor))
    elif order == 2:
        sq = np.einsum("...ik,...jl,...aij,...akl->...", ginv, ginv, tensor,
                       np.conj(tensor))
    else:
        # conformal metrics: g^{ij} = delta_ij / c
        axes = tuple(range(-order - 1, 0))
        sq = np.sum(np.abs(tensor) ** 2, axis=axes) / \
            metric.conformal ** order
    return np.sqrt(np.maximum(np.real(sq), 0.0))
