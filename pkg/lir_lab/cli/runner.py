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
This module runs an experiment: it builds the metric, the radius field, the
cover and the operator on demand and executes the requested checks in
dependency order.

Checks with a hard pass criterion make up the verdict. Fitted-constant
studies are informational and listed separately.
"""
import logging
import math
import os
import platform
import time
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy

from .. import __version__
from ..common.exception import LirOperationError
from ..common.utils import make_rng
from ..covering.overlap import overlap_stats
from ..covering.vitali import build_cover
from ..doubling.double import boundary_solve, build_double
from ..elliptic.audit import ellipticity_audit
from ..elliptic.harmonic import harmonic_basis, harmonic_projection
from ..elliptic.operator import build_operator
from ..elliptic.series import local_series_solve
from ..elliptic.solve import decomposition_check, min_norm_solve
from ..exponents.sobolev import chain_term, simulate_steps, step_bound
from ..exponents.weights import exponent_table
from ..fields.comparison import peter_paul_check, scaling_check, \
    sobolev_comparison_check
from ..fields.norms import Ball
from ..fields.section import section_from_function
from ..geometry.metric import build_metric
from ..geometry.model import build_model
from ..geometry.radius import inject_radius_field, node_radius, \
    radius_comparison_check, radius_field
from ..lir.bootstrap import bootstrap
from ..lir.family import Member, estimate_family, random_data
from ..lir.global_weighted import verify_global_weighted
from ..lir.interpolation import verify_interpolation_weights
from ..lir.local import verify_chain, verify_local_estimate, \
    verify_local_existence
from .config import CHECKS, load_config
from .export import read_radius_csv, render_plots, write_csv, write_json

log = logging.getLogger(__name__)

INFORMATIONAL = ("local_estimate", "chain", "local_existence", "bootstrap",
                 "global_weighted", "comparison")
SOLVE_RTOL = 1e-8
ADJOINT_RTOL = 1e-10
DOUBLE_RTOL = 1e-6


@dataclass
class RunReport:
    config: dict
    stages: dict = field(default_factory=dict)
    asserted: dict = field(default_factory=dict)
    informational: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    environment: dict = field(default_factory=dict)
    wall_time: float = 0.0
    files: list = field(default_factory=list)

    @property
    def verdict(self):
        return not self.errors and all(self.asserted.values())

    def as_dict(self, timing=True):
        data = {"config": self.config, "stages": self.stages,
                "asserted": self.asserted,
                "informational": self.informational,
                "errors": self.errors, "environment": self.environment,
                "verdict": self.verdict}
        if timing:
            data["timing"] = {"wall_time": self.wall_time}
        return data


def environment():
    return {"lir_lab": __version__, "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version()}


class Pipeline(object):
    """Lazily built shared state of one run."""

    def __init__(self, config):
        self.config = config
        self.tables = {}

    @cached_property
    def metric(self):
        spec = self.config.manifold
        model = build_model(spec.kind, spec.dimension, periods=spec.periods,
                            amplitude=spec.amplitude,
                            frequency=spec.frequency,
                            boundary_length=spec.boundary_length)
        return build_metric(model, self.config.grid)

    @cached_property
    def operator(self):
        spec = self.config.operator
        return build_operator(spec.kind, self.metric, mass=spec.mass,
                              rank=spec.rank)

    @cached_property
    def basis(self):
        return harmonic_basis(self.operator)

    @cached_property
    def radius_field(self):
        config = self.config
        spec = config.radius
        if spec.source == "computed":
            return radius_field(self.metric, config.epsilon, config.m)
        if spec.csv is not None:
            values = read_radius_csv(spec.csv, self.metric.grid.shape)
        else:
            phase = self.metric.grid.coordinates[..., 0]
            scale = 2.0 * math.pi / self.metric.grid.lengths[0]
            values = spec.low + (spec.high - spec.low) * \
                0.5 * (1.0 + np.cos(scale * phase))
        return inject_radius_field(self.metric, values, config.epsilon,
                                   config.m, seed=config.seed)

    @cached_property
    def cover(self):
        return build_cover(self.radius_field, self.metric)

    @cached_property
    def data(self):
        """Seeded band-limited data with the harmonic part removed."""
        members = random_data(self.metric, max(self.config.samples, 1),
                              seed=self.config.seed,
                              rank=self.operator.rank)
        return [Member(m.name, m.section -
                       harmonic_projection(m.section, self.basis))
                for m in members]

    @property
    def cap(self):
        if self.config.radius.source == "computed" and \
                not self.metric.model.is_flat:
            return node_radius(self.radius_field, self.config.node)
        return min(1.0, self.metric.model.chart_radius)

    def radii(self):
        return [R for R in self.config.radii if R <= self.cap]

    # stages; each returns (record, passed)

    def stage_radius(self):
        field_ = self.radius_field
        violations, checked = radius_comparison_check(
            field_, seed=self.config.seed)
        values = field_.values
        shape = values.shape
        coords = self.metric.grid.coordinates
        self.tables["radius"] = [_node_row(node, coords, radius=values[node])
                                 for node in np.ndindex(*shape)]
        return {"provenance": field_.provenance, "min": values.min(),
                "max": values.max(), "mean": values.mean(),
                "violations": len(violations), "checked": checked}, \
            not violations

    def stage_cover(self):
        cover = self.cover
        stats = overlap_stats(cover, self.metric, seed=self.config.seed)
        coords = self.metric.grid.coordinates
        self.tables["cover"] = [
            dict({"index": ball.index}, **_node_row(
                ball.center, coords, seed_radius=ball.seed_radius))
            for ball in cover.balls]
        spacing = min(self.metric.grid.spacing)
        smallest = min(ball.seed_radius for ball in cover.balls)
        record = stats.as_dict()
        record.update({"balls": len(cover.balls),
                       "vitali_ok": cover.vitali_ok,
                       "min_seed_radius": smallest,
                       "grid_spacing": spacing,
                       "resolved": smallest >= spacing})
        if smallest < spacing:
            log.warning("seed radius %.3g is below the grid spacing %.3g: "
                        "balls hold single nodes and the overlap count is "
                        "trivial", smallest, spacing)
        return record, stats.passed and stats.integral_passed and \
            cover.vitali_ok

    def stage_exponents(self):
        config = self.config
        n = config.manifold.dimension
        chain, rows = exponent_table(n, config.m, config.r)
        tau = Fraction(config.m, n)
        bound = step_bound(config.r, 2, tau)
        simulated = simulate_steps(config.r, 2, tau)
        self.tables["exponents"] = rows
        return {"chain": [str(t) for t in chain.terms], "l": chain.l,
                "step_bound": bound, "simulated_steps": simulated}, \
            chain.l <= bound and simulated <= bound

    def stage_ellipticity(self):
        audit = ellipticity_audit(self.operator, seed=self.config.seed)
        return audit.as_dict(), audit.passed

    def stage_solve(self):
        op = self.operator
        omega = self.data[0].section
        u = min_norm_solve(op, omega, self.basis)
        du = op.apply(u)
        scale = max(omega.norm(), np.finfo(float).tiny)
        residual = (du - omega).norm() / scale
        trial = op.section(make_rng(self.config.seed + 1).standard_normal(
            omega.values.shape))
        lhs = du.inner(trial)
        rhs = u.inner(op.apply_adjoint(trial))
        adjoint = abs(lhs - rhs) / max(abs(lhs), np.finfo(float).tiny)
        return {"residual": residual, "tolerance": SOLVE_RTOL,
                "adjointness": adjoint,
                "adjointness_tolerance": ADJOINT_RTOL}, \
            residual <= SOLVE_RTOL and adjoint <= ADJOINT_RTOL

    def stage_decomposition(self):
        rng = make_rng(self.config.seed + 2)
        rows = []
        for i in range(max(self.config.samples, 1)):
            v = self.operator.section(
                rng.standard_normal(self.metric.grid.shape +
                                    (self.operator.rank,)))
            _, _, report = decomposition_check(self.operator, v,
                                               seed=self.config.seed + i)
            rows.append(dict(asdict(report), passed=report.passed()))
        return {"samples": rows}, all(row["passed"] for row in rows)

    def stage_series(self):
        radius = min(self.config.radii)
        mask = Ball(self.config.node, radius).mask(self.metric)
        result = local_series_solve(self.operator, self.data[0].section,
                                    mask, basis=self.basis)
        self.tables["series"] = result.trace
        ok = all(row["h_norm"] <= row["bound"] * (1.0 + 1e-9)
                 for row in result.trace)
        return {"radius": radius, "smallness": result.smallness,
                "iterations": result.iterations, "trace": result.trace}, ok

    def _estimate(self, name, report):
        self.tables[name] = report.rows()
        return report.as_dict(), report.passed and \
            report.radius_independent is not False

    def stage_local_estimate(self):
        family = estimate_family(self.metric, seed=self.config.seed,
                                 rank=self.operator.rank)
        return self._estimate("local_estimate", verify_local_estimate(
            self.operator, family, self.config.node, self.radii(),
            self.config.r_value))

    def stage_chain(self):
        family = estimate_family(self.metric, seed=self.config.seed,
                                 rank=self.operator.rank)
        return self._estimate("chain", verify_chain(
            self.operator, family, self.config.node, self.radii(),
            self.config.r_value, self.config.chain_order))

    def stage_local_existence(self):
        main, square = verify_local_existence(
            self.operator, self.data, self.config.node,
            [min(self.config.radii)], self.config.r_value, basis=self.basis)
        self.tables["local_existence"] = main.rows() + square.rows()
        return {"L^t": main.as_dict(), "L^2": square.as_dict()}, \
            main.passed and square.passed

    def stage_bootstrap(self, report_):
        trace, report = bootstrap(self.operator, self.data, self.config.node,
                                  self.radii(), self.config.r_value,
                                  basis=self.basis)
        report_.asserted["bootstrap_steps"] = trace.respects_bound
        record, passed = self._estimate("bootstrap", report)
        record["trace"] = trace.as_dict()
        return record, passed

    def stage_global_weighted(self):
        return self._estimate("global_weighted", verify_global_weighted(
            self.operator, self.data, self.radius_field,
            self.config.r_value, cover=self.cover, basis=self.basis))

    def stage_interpolation(self):
        n, m = self.metric.dimension, self.operator.order
        k = 0
        while not chain_term(n, m, k + 1).is_infinite:
            k += 1
        if k < 1:
            return {"skipped": "t_1 is infinite for n=%d m=%d" % (n, m)}, \
                True
        report = verify_interpolation_weights(self.data[0].section,
                                              self.radius_field, n, m, k)
        self.tables["interpolation"] = report.rows
        return report.as_dict(), report.passed

    def stage_scaling(self):
        n = self.metric.dimension
        radii = [R for R in self.config.radii if R <= 1.0]
        r = self.config.r_value

        def bump(y):
            return np.exp(-np.sum(y ** 2, axis=-1)) * (1.0 + 0.5 * y[..., 0])
        report = scaling_check(bump, radii, self.config.m, r, n)
        self.tables["scaling"] = report.rows
        return asdict(report), report.passed

    def stage_comparison(self):
        config = self.config
        radius = 0.5 * self.cap
        section = self.data[0].section
        comparison = sobolev_comparison_check(
            self.metric, config.node, radius, section, min(config.m, 2),
            config.r_value, config.epsilon)
        peter_paul = peter_paul_check(
            [m.section for m in self.data], max(config.m, 1),
            config.r_value, Ball(config.node, radius), self.metric)
        return {"comparison": asdict(comparison),
                "peter_paul": asdict(peter_paul)}, \
            comparison.inner_contained and comparison.outer_contained

    def stage_double(self):
        config = self.config
        spec = config.doubling
        records = []
        for factor in (1, 2):
            grid = tuple(n * factor for n in spec.grid)
            domain = build_double(spec.length, spec.margin, grid)
            op = build_operator(config.operator.kind, domain.gamma,
                                mass=config.operator.mass,
                                rank=config.operator.rank)
            length = spec.length
            omega = section_from_function(
                domain.cylinder,
                lambda y: np.sin(math.pi * y[..., 1] / length) *
                np.cos(y[..., 0]), rank=op.rank)
            records.append(boundary_solve(op, domain, omega,
                                          r=config.r_value).as_dict())
        coarse, fine = records
        ok = all(rec["spectral_residual"] <= DOUBLE_RTOL for rec in records) \
            and fine["difference_residual"] <= coarse["difference_residual"]
        return {"runs": records, "tolerance": DOUBLE_RTOL}, ok


def _node_row(node, coords, **values):
    """CSV row with the index and chart coordinates of a grid node."""
    row = {"i%d" % a: int(i) for a, i in enumerate(node)}
    row.update({"y%d" % a: float(y)
                for a, y in enumerate(coords[tuple(node)])})
    row.update(values)
    return row


def _run_stages(pipeline, report):
    for name in CHECKS:
        if name not in pipeline.config.checks:
            continue
        log.info("stage %s", name)
        try:
            if name == "bootstrap":
                record, passed = pipeline.stage_bootstrap(report)
            else:
                record, passed = getattr(pipeline, "stage_" + name)()
        except LirOperationError as err:
            log.warning("stage %s failed: %s", name, err)
            report.errors[name] = "%s: %s" % (type(err).__name__, err)
            continue
        report.stages[name] = record
        target = report.informational if name in INFORMATIONAL else \
            report.asserted
        target[name] = bool(passed)


def write_outputs(report, pipeline, out):
    os.makedirs(out, exist_ok=True)
    files = [write_json(os.path.join(out, "report.json"), report.as_dict())]
    for name, rows in sorted(pipeline.tables.items()):
        if rows:
            files.append(write_csv(os.path.join(out, name + ".csv"), rows))
    files.extend(render_plots(report.stages, out))
    return files


def run(config, out=None, seed=None, grid=None, write=True):
    """
    Runs the checks of a configuration.

    Args:
        config (ExperimentConfig or string): configuration or its path
        out (string): output directory, overrides the configuration
        seed (int): overrides the configuration seed
        grid (tuple of int): overrides the configuration grid
        write (bool): write the JSON, CSV and SVG artifacts

    Returns:
        RunReport; ``verdict`` is the conjunction of the asserted checks

    Raises:
        ConfigInvalid: if the configuration fails validation
    """
    start = time.perf_counter()
    if not hasattr(config, "checks"):
        config = load_config(config)
    if seed is not None:
        config = replace(config, seed=int(seed))
    if grid is not None:
        config = replace(config, grid=tuple(grid))
    pipeline = Pipeline(config)
    report = RunReport(config=config.as_dict(), environment=environment())
    _run_stages(pipeline, report)
    report.wall_time = time.perf_counter() - start
    if write:
        report.files = write_outputs(report, pipeline,
                                     out or config.output)
    log.info("run finished in %.2f s, verdict %s", report.wall_time,
             report.verdict)
    return report
