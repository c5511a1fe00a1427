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

from lir_lab.common.exception import LirOperationError
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model
from lir_lab.lir.family import as_members, as_radii, estimate_family, \
    nested_balls, random_data


def test_001_family_size():
    metric = build_metric(build_model("flat_torus", 1), 64)
    family = estimate_family(metric)
    assert len(family) == 21
    names = [member.name for member in family]
    assert names[0] == "const" and "sin(6x)" in names
    assert len(set(names)) == len(names)


def test_002_members_independent_of_resolution():
    coarse = build_metric(build_model("flat_torus", 2), (16, 16))
    fine = build_metric(build_model("flat_torus", 2), (32, 32))
    for a, b in zip(estimate_family(coarse, seed=3),
                    estimate_family(fine, seed=3)):
        assert np.allclose(a.section.values, b.section.values[::2, ::2])
    for a, b in zip(random_data(coarse, 2, seed=5, rank=2),
                    random_data(fine, 2, seed=5, rank=2)):
        assert np.allclose(a.section.values, b.section.values[::2, ::2])


def test_003_rank_components_differ():
    metric = build_metric(build_model("flat_torus", 1), 32)
    section = random_data(metric, 1, rank=2)[0].section
    assert section.rank == 2
    assert not np.allclose(section.values[..., 0], section.values[..., 1])


def test_004_nested_balls():
    metric = build_metric(build_model("flat_torus", 2), (32, 32))
    family = nested_balls(metric, (3, 4), 1.0, 2)
    assert [ball.radius for ball in family.balls] == [1.0, 0.5, 0.25]
    masks = [ball.mask(metric) for ball in family.balls]
    assert np.all(masks[0][masks[1]]) and np.all(masks[1][masks[2]])
    with pytest.raises(LirOperationError):
        family.ball(3)
    with pytest.raises(LirOperationError):
        nested_balls(metric, (0, 0), 4.0, 1)
    with pytest.raises(LirOperationError):
        nested_balls(metric, (0, 0), 0.0, 1)


def test_005_coercions():
    metric = build_metric(build_model("flat_torus", 1), 16)
    section = random_data(metric, 1)[0].section
    assert as_members(section)[0].name == "u"
    assert len(as_members([section, section])) == 2
    assert as_radii(0.5) == [0.5]
    assert as_radii((1, 0.5)) == [1.0, 0.5]
