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

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from lir_lab.cli.export import dumps, estimate_reports, plot_radius_profile, \
    read_radius_csv, write_csv
from lir_lab.common.exception import InjectionRejected


def test_001_dumps_special_values():
    text = dumps({"b": math.inf, "a": Fraction(7, 2),
                  "c": np.float64(0.5), "d": np.arange(3),
                  "e": complex(1, -2), "f": np.bool_(True)})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c", "d", "e", "f"]
    assert data["a"] == "7/2"
    assert data["b"] == "inf"
    assert data["c"] == 0.5
    assert data["d"] == [0, 1, 2]
    assert data["e"] == [1.0, -2.0]
    assert data["f"] is True


def test_002_csv_union_header(tmp_path):
    path = str(tmp_path / "table.csv")
    write_csv(path, [{"R": 1.0, "lhs": 2.0}, {"R": 0.5, "rhs": 3.0}])
    with open(path) as handle:
        lines = handle.read().splitlines()
    assert lines[0] == "R,lhs,rhs"
    assert lines[2] == "0.5,,3.0"


def test_003_read_radius_csv(tmp_path):
    path = tmp_path / "radii.csv"
    rows = ["i0,i1,radius"]
    rows += ["%d,%d,%g" % (i, j, 0.1 * (i + 1)) for i in range(4)
             for j in range(4)]
    path.write_text("\n".join(rows) + "\n")
    values = read_radius_csv(str(path), (4, 4))
    assert values.shape == (4, 4)
    assert values[3, 2] == pytest.approx(0.4)
    path.write_text("\n".join(rows[:-1]) + "\n")
    with pytest.raises(InjectionRejected):
        read_radius_csv(str(path), (4, 4))


def test_004_radius_profile_plot(tmp_path):
    report = {"identifier": "LIR(r=2)", "instances": [],
              "radius_profile": {"1.0": 1.0, "0.5": 0.6, "0.25": 0.4},
              "slope": 0.66}
    assert [found["identifier"] for found in
            estimate_reports({"stages": {"x": report}})] == ["LIR(r=2)"]
    path = plot_radius_profile(report, str(tmp_path / "profile.svg"))
    with open(path) as handle:
        first = handle.read()
    plot_radius_profile(report, str(tmp_path / "again.svg"))
    with open(str(tmp_path / "again.svg")) as handle:
        assert handle.read() == first
    assert plot_radius_profile({"radius_profile": {"1": 1.0}},
                               str(tmp_path / "none.svg")) is None


def test_005_read_radius_csv_with_coordinates(tmp_path):
    path = tmp_path / "radius.csv"
    rows = ["i0,i1,y0,y1,radius"]
    rows += ["%d,%d,%g,%g,%g" % (i, j, 0.5 * i, 0.5 * j, 0.2 + i)
             for i in range(3) for j in range(3)]
    path.write_text("\n".join(rows) + "\n")
    values = read_radius_csv(str(path), (3, 3))
    assert values[2, 1] == pytest.approx(2.2)
    path.write_text("0,1\n")
    with pytest.raises(InjectionRejected):
        read_radius_csv(str(path), (3, 3))
