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
This module measures Riemannian distance on the grid graph of a metric.

Nodes are joined to every neighbour with offset in {-1, 0, 1}^n (8 in 2-D,
26 in 3-D), wrapping around periodic axes. An edge weighs the chart step
length scaled by the metric at the step midpoint.
"""
import itertools
import logging

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from ..common.utils import flat_index

log = logging.getLogger(__name__)


def _half_offsets(n):
    """Offsets whose first nonzero entry is positive."""
    for offset in itertools.product((-1, 0, 1), repeat=n):
        nonzero = [o for o in offset if o != 0]
        if nonzero and nonzero[0] > 0:
            yield np.array(offset)


def grid_graph(metric):
    """
    Returns the symmetric sparse (CSR) edge-length matrix of the grid graph,
    built once per metric.
    """
    if "graph" in metric.cache:
        return metric.cache["graph"]
    grid = metric.grid
    shape = grid.shape
    h = np.asarray(grid.spacing)
    index = np.arange(grid.size).reshape(shape)
    coords = grid.coordinates
    rows, cols, lengths = [], [], []
    for offset in _half_offsets(grid.ndim):
        src = index
        dst = index
        valid = np.ones(shape, dtype=bool)
        for axis, o in enumerate(offset):
            if o == 0:
                continue
            dst = np.roll(dst, -o, axis=axis)
            if not grid.periodic[axis]:
                edge = [slice(None)] * grid.ndim
                edge[axis] = slice(-1, None) if o > 0 else slice(0, 1)
                valid[tuple(edge)] = False
        delta = offset * h
        mid = coords + 0.5 * delta
        length = metric.line_element(mid, delta)
        rows.append(src[valid])
        cols.append(dst[valid])
        lengths.append(length[valid])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    lengths = np.concatenate(lengths)
    graph = coo_matrix((np.concatenate([lengths, lengths]),
                        (np.concatenate([rows, cols]),
                         np.concatenate([cols, rows]))),
                       shape=(grid.size, grid.size)).tocsr()
    log.debug("grid graph with %d nodes and %d edges", grid.size,
              graph.nnz // 2)
    metric.cache["graph"] = graph
    return graph


def distances_from(metric, x):
    """Distances from node ``x`` to every node, shaped like the grid."""
    graph = grid_graph(metric)
    ix = flat_index(metric.grid.shape, x)
    return dijkstra(graph, directed=False, indices=ix).reshape(
        metric.grid.shape)


def distance(metric, x, y):
    """
    Shortest-path Riemannian distance between two grid nodes.

    Args:
        metric (MetricField)
        x (tuple of int): grid node
        y (tuple of int): grid node

    Returns:
        float

    Example:
        distance(metric, (0, 0), (32, 0))
    """
    if tuple(x) == tuple(y):
        return 0.0
    return float(distances_from(metric, x)[tuple(y)])


def local_distances(metric, source, limit):
    """
    Dijkstra from flat node index ``source``, stopped at ``limit``.

    Returns:
        (nodes, dists): flat indices reached within ``limit`` and their
        distances, nearest first (ties by index).
    """
    dists = dijkstra(grid_graph(metric), directed=True, indices=int(source),
                     limit=float(limit))
    nodes = np.flatnonzero(np.isfinite(dists))
    nodes = nodes[np.argsort(dists[nodes], kind="stable")]
    return nodes, dists[nodes]


def within(metric, source, target, limit):
    """True if flat node ``target`` lies within ``limit`` of ``source``."""
    nodes, _ = local_distances(metric, source, limit)
    return bool(np.any(nodes == target))


def metric_ball(metric, center, radius):
    """
    Boolean mask of the grid nodes in the closed metric ball B(center,
    radius).
    """
    source = flat_index(metric.grid.shape, center)
    nodes, _ = local_distances(metric, source, radius)
    mask = np.zeros(metric.grid.size, dtype=bool)
    mask[nodes] = True
    return mask.reshape(metric.grid.shape)
