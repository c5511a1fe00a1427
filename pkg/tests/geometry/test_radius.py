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

from lir_lab.common.exception import InjectionRejected, NotAdmissible
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model
from lir_lab.geometry.radius import admissible_radius, inject_radius_field, \
    radius_comparison_check, radius_field
from ..settings.info import custom_setup, settings

metric = None
bumpy = None


def setup_module():
    global metric, bumpy
    metric = custom_setup("flat_torus_2d")
    # summed derivative sups make the radius vary between ~0.01 and ~0.43
    bumpy = build_metric(build_model("bumpy_torus", 1, amplitude=0.07),
                         256)


def test_001_flat_radius_is_one():
    options = settings("flat_torus_2d")
    field = radius_field(metric, float(options["epsilon"]),
                         int(options["m"]))
    assert np.all(field.values == 1.0)
    assert field.provenance == "computed"


def test_002_bumpy_radius_varies():
    field = radius_field(bumpy, 0.1, 3)
    assert 0.0 < field.values.min() < 0.05
    assert 0.3 < field.values.max() < 0.5
    assert admissible_radius(bumpy, (0,), 0.1, 3) == pytest.approx(
        field.values[0])


def test_003_radius_comparison_holds():
    field = radius_field(bumpy, 0.1, 3)
    violations, checked = radius_comparison_check(field, seed=1)
    assert checked == 10000
    assert violations == []


def test_004_center_not_admissible():
    steep = build_metric(build_model("bumpy_torus", 1, amplitude=0.15), 256)
    with pytest.raises(NotAdmissible):
        radius_field(steep, 0.1, 2)
    with pytest.raises(NotAdmissible):
        radius_field(metric, 1.5, 2)


def test_005_inject_accepts_slow_field():
    field = inject_radius_field(
        metric, lambda y: 0.5 + 0.25 * np.cos(y[..., 0]), 0.1, 2)
    assert field.provenance == "injected"
    assert field.values.max() == pytest.approx(0.75)


def test_006_inject_rejects():
    with pytest.raises(InjectionRejected):
        inject_radius_field(metric, np.full((64, 64), 1.5))
    checker = np.where(np.indices((64, 64)).sum(axis=0) % 2 == 0, 1.0, 0.1)
    with pytest.raises(InjectionRejected) as err:
        inject_radius_field(metric, checker)
    assert err.value.pair is not None


@pytest.mark.parametrize("epsilon", [0.01, 0.1, 0.5, 0.9])
def test_007_flat_radius_hits_cap(epsilon):
    assert np.all(radius_field(metric, epsilon, 2).values == 1.0)
    small = build_metric(build_model("flat_torus", 2, periods=[0.2, 0.2]),
                         (16, 16))
    assert np.allclose(radius_field(small, epsilon, 2).values, 0.1)


def test_008_radius_grows_with_epsilon():
    previous = None
    for epsilon in (0.1, 0.2, 0.4, 0.8):
        values = radius_field(bumpy, epsilon, 3).values
        if previous is not None:
            assert np.all(values >= previous)
        previous = values
    assert previous.min() > radius_field(bumpy, 0.1, 3).values.min()


def test_009_gentle_bump_is_flat_enough():
    gentle = custom_setup("bumpy_torus_1d")
    field = radius_field(gentle, 0.1, 2)
    assert np.all(field.values == 1.0)
