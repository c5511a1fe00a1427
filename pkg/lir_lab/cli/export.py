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
Writers for the run artifacts: the JSON report, CSV tables and SVG plots
of fitted constants against the ball radius.
"""
import csv
import json
import logging
import math
import os
from fractions import Fraction

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..common.exception import InjectionRejected  # noqa: E402

log = logging.getLogger(__name__)


def _plain(value):
    """JSON-compatible form of numpy scalars, arrays and Fractions."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Fraction):
        return str(value)
    return value


def dumps(data):
    """Deterministic JSON text, keys sorted."""
    return json.dumps(_plain(data), sort_keys=True, indent=2)


def write_json(path, data):
    with open(path, "w") as handle:
        handle.write(dumps(data))
        handle.write("\n")
    log.debug("wrote %s", path)
    return path


def write_csv(path, rows):
    """Writes a list of dicts; the header is the union of their keys."""
    fields = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _plain(v) for k, v in row.items()})
    log.debug("wrote %s (%d rows)", path, len(rows))
    return path


def savefig(figure, path):
    # no timestamp, fixed ids: same data gives the same file
    plt.rcParams["svg.hashsalt"] = "lir_lab"
    figure.savefig(path, format="svg", metadata={"Date": None})
    plt.close(figure)
    log.debug("figure saved to %s", path)
    return path


def plot_radius_profile(report, path):
    """
    Log-log plot of the constant rescaling factor against R for one
    estimate report (as a dict), or None when it has no radius profile.
    """
    profile = report.get("radius_profile") or {}
    points = sorted((float(k), float(v)) for k, v in profile.items()
                    if float(v) > 0)
    if len(points) < 2:
        return None
    radii, factors = zip(*points)
    figure, axis = plt.subplots(figsize=(5, 4))
    axis.loglog(radii, factors, "o-")
    axis.set_xlabel("R")
    axis.set_ylabel("constant factor")
    slope = report.get("slope")
    title = report.get("identifier", "")
    if slope is not None:
        title += " (slope %.3f)" % slope
    axis.set_title(title)
    axis.grid(True, which="both", alpha=0.3)
    return savefig(figure, path)


def estimate_reports(data):
    """Yields every estimate report dict nested in a run report."""
    if isinstance(data, dict):
        if "identifier" in data and "instances" in data:
            yield data
        for value in data.values():
            for found in estimate_reports(value):
                yield found
    elif isinstance(data, list):
        for value in data:
            for found in estimate_reports(value):
                yield found


def render_plots(data, out):
    """Writes one SVG per estimate report with a radius profile."""
    written = []
    for report in estimate_reports(data):
        name = report["identifier"].replace("(", "_").replace(")", "") \
            .replace("=", "")
        path = plot_radius_profile(report, os.path.join(out, name + ".svg"))
        if path:
            written.append(path)
    return written


def render_report(json_path, out=None):
    """Re-renders the plots of an existing JSON report."""
    with open(json_path) as handle:
        data = json.load(handle)
    out = out or os.path.dirname(os.path.abspath(json_path))
    os.makedirs(out, exist_ok=True)
    return render_plots(data, out)


def read_radius_csv(path, shape):
    """
    Reads injected radii from CSV rows ``i_0, ..., i_(n-1), [y_0, ...,
    y_(n-1),] radius``: the first n columns index the node and the last
    holds the radius. Rows not starting with an index (headers, comments)
    are skipped.

    Raises:
        InjectionRejected: on missing nodes or malformed rows
    """
    values = np.full(shape, np.nan)
    with open(path, newline="") as handle:
        for row in csv.reader(handle):
            if not row or not row[0].strip().isdigit():
                continue
            try:
                if len(row) < len(shape) + 1:
                    raise IndexError("expected %d indices and a radius"
                                     % len(shape))
                node = tuple(int(v) for v in row[:len(shape)])
                values[node] = float(row[-1])
            except (ValueError, IndexError) as err:
                raise InjectionRejected("inject_radius_field",
                                        "bad row %r: %s" % (row, err))
    if np.any(np.isnan(values)):
        raise InjectionRejected("inject_radius_field",
                                "%d nodes have no radius"
                                % int(np.isnan(values).sum()))
    return values
