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

import math

import numpy as np

from lir_lab.elliptic.harmonic import harmonic_basis, harmonic_projection
from lir_lab.elliptic.operator import hodge_laplacian
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model
from lir_lab.geometry.radius import inject_radius_field
from lir_lab.lir.family import Member, random_data
from lir_lab.lir.global_weighted import GLOBAL_MAX, GLOBAL_SOBOLEV, \
    verify_global_weighted, weighted_refinement_study
from lir_lab.lir.interpolation import verify_interpolation_weights


def two_scale(y):
    return 0.5 + 0.25 * (1.0 + np.cos(y[..., 0]))


def build(resolution):
    metric = build_metric(build_model("flat_torus", 2), resolution)
    op = hodge_laplacian(metric)
    basis = harmonic_basis(op)
    data = [Member(m.name, m.section - harmonic_projection(m.section, basis))
            for m in random_data(metric, 4, seed=9)]
    field = inject_radius_field(metric, two_scale, 0.1, 2)
    return op, data, field


def test_001_global_weighted():
    op, data, field = build((32, 32))
    report = verify_global_weighted(op, data, field, 4)
    assert report.passed
    assert report.metadata["l"] == 1
    assert report.metadata["provenance"] == "injected"
    assert report.metadata["max_overlap"] <= report.metadata["overlap_bound"]
    assert report.metadata[GLOBAL_SOBOLEV]["passed"]
    assert report.metadata[GLOBAL_MAX]["passed"]
    for row in report.metadata["cover_to_direct"]:
        assert math.isfinite(row["ratio"]) and row["ratio"] > 0


def test_002_refinement_study():
    study = weighted_refinement_study(build, [(16, 16), (32, 32)], 4)
    assert len(study.reports) == 2
    assert all(report.passed for report in study.reports)
    assert all(value <= 0.2 for value in study.stability.values())
    assert study.as_dict()["resolutions"] == [[16, 16], [32, 32]]


def test_003_interpolation_weights():
    _, data, field = build((32, 32))
    report = verify_interpolation_weights(data[0].section, field, 8, 1, 2)
    assert report.passed
    assert [row["j"] for row in report.rows] == [1, 2]
    assert report.rows[0]["theta"] == "1/2"
    assert report.max_ratio > 0
