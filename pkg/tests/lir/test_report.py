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
import pytest

from lir_lab.lir.report import SLOPE_RANGE, EstimateReport, build_report, \
    fit_constants, make_instance


def test_001_fit_constants():
    constants = fit_constants([1.0, 2.0], [[1.0, 0.0], [0.0, 1.0]])
    assert constants == pytest.approx([1.0, 2.0])
    assert np.all(fit_constants([1.0, 1.0], [[2.0, 1.0], [1.0, 3.0]]) >= 0)


def test_002_fit_infeasible():
    assert fit_constants([1.0], [[0.0, 0.0]]) is None
    report = build_report("empty", ["a", "b"],
                          [make_instance("x", 1.0, [0.0, 0.0])])
    assert not report.passed
    assert report.constants is None


def test_003_every_instance_holds():
    instances = [make_instance("u%d" % i, 1.0 + i, [1.0, 0.5 * i + 1.0],
                               radius=1.0 / (i + 1)) for i in range(6)]
    report = build_report("empty", ["a", "b"], instances)
    assert report.passed
    assert all(item["holds"] for item in report.instances)
    assert all(item["rhs"] >= item["lhs"] * (1.0 - 1e-7)
               for item in report.instances)


def test_004_radius_independent_profile():
    instances = [make_instance("u R=%g" % R, 2.0, [1.0], radius=R)
                 for R in (1.0, 0.5, 0.25, 0.125)]
    report = build_report("flat", ["a"], instances)
    assert report.slope == pytest.approx(0.0, abs=1e-12)
    assert report.radius_independent


def test_005_radius_dependent_profile():
    # lhs grows like R^-1 against a fixed term, so only small R are tight
    instances = [make_instance("u R=%g" % R, 1.0 / R, [1.0], radius=R)
                 for R in (1.0, 0.5, 0.25, 0.125)]
    report = build_report("growing", ["a"], instances)
    assert report.passed
    assert report.slope == pytest.approx(-1.0)
    assert report.radius_independent is False


def test_006_rows_and_dict():
    instances = [make_instance("u", 1.0, [1.0, 2.0], radius=0.5)]
    report = build_report("empty", ["a", "b"], instances,
                          metadata={"operator": "laplacian"})
    row = report.rows()[0]
    assert row["a"] == 1.0 and row["b"] == 2.0
    data = report.as_dict()
    assert data["metadata"]["operator"] == "laplacian"
    assert "0.5" in data["radius_profile"]
    assert report.radius_independent is None


def test_007_empty_family():
    report = build_report("empty", ["a"], [])
    assert report.passed
    assert report.constants == [0.0]


@pytest.mark.parametrize("slope,expected", [
    (0.0, True), (0.2, True), (-0.2, True), (0.21, False), (-0.25, False),
    (None, None)])
def test_008_slope_range(slope, expected):
    assert SLOPE_RANGE == 0.2
    report = EstimateReport("slope", ["a"], [], slope=slope)
    assert report.radius_independent is expected
