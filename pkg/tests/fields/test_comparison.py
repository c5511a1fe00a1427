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

import numpy as np

from lir_lab.fields.comparison import peter_paul_check, scaling_check, \
    sobolev_comparison_check
from lir_lab.fields.norms import Ball
from lir_lab.fields.section import section_from_function
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model

radii = [1.0, 0.5, 0.25, 0.125]


def bump(y):
    return np.exp(-np.sum(y ** 2, axis=-1)) * (1.0 + 0.5 * y[..., 0])


def test_001_scaling_identities():
    report = scaling_check(bump, radii, 1, 2, 3, resolution=16)
    assert report.identities_hold
    assert report.constant_stable
    assert report.embedding_holds
    assert abs(report.slope) < 1e-6
    assert report.passed


def test_002_scaling_supercritical():
    # t = S_2(2) is infinite in two dimensions
    report = scaling_check(bump, radii, 2, 2, 2)
    assert report.t == float("inf")
    assert report.passed


def test_003_sobolev_comparison():
    metric = build_metric(build_model("bumpy_torus", 2, amplitude=0.05),
                          (64, 64))
    section = section_from_function(
        metric, lambda y: np.cos(y[..., 0]) + np.sin(y[..., 1]))
    report = sobolev_comparison_check(metric, (0, 0), 0.5, section, 1, 2,
                                      0.1)
    assert report.inner_contained and report.outer_contained
    assert abs(report.ratio - 1.0) < 0.1


def test_004_peter_paul_scaling():
    metric = build_metric(build_model("flat_torus", 1), 128)
    sections = [section_from_function(
        metric, lambda y, k=k: np.cos(k * y[..., 0])) for k in (1, 2, 4)]
    report = peter_paul_check(sections, 2, 2, Ball((0,), 1.0), metric)
    assert report.passed
    constants = [row["constant"] for row in report.rows]
    assert constants == sorted(constants)
    assert all(row["scaled"] < 10.0 for row in report.rows)
