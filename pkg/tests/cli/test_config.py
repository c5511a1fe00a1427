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

import pytest

from lir_lab.cli.config import CHECKS, load_config, validate
from lir_lab.common.exception import ConfigInvalid


def test_001_defaults():
    config = validate({"seed": 3})
    assert config.seed == 3
    assert config.grid == (64, 64)
    assert config.checks == ()
    assert config.node == (0, 0)
    assert config.r_value == 2.0


def test_002_string_fields():
    config = validate({"seed": 0, "manifold": {"kind": "flat_torus",
                                               "dimension": 3},
                       "grid": "32x32x32", "r": "inf",
                       "radii": "1, 1/2, 1/4"})
    assert config.grid == (32, 32, 32)
    assert math.isinf(config.r_value)
    assert config.radii == (1.0, 0.5, 0.25)


@pytest.mark.parametrize("document, field", [
    ({"seed": 0, "epsilon": 1.5}, "epsilon"),
    ({}, "seed"),
    ({"seed": 0, "manifold": {"kind": "sphere"}}, "manifold.kind"),
    ({"seed": 0, "manifold": {"genus": 2}}, "manifold.genus"),
    ({"seed": 0, "grid": "64x64x64"}, "grid"),
    ({"seed": 0, "checks": ["cover", "magic"]}, "checks[1]"),
    ({"seed": 0, "r": "half"}, "r"),
    ({"seed": 0, "version": 2}, "version"),
    ({"seed": 0, "radius": {"source": "injected"}}, "radius"),
    ({"seed": 0, "colour": "red"}, "colour"),
])
def test_003_invalid_fields(document, field):
    with pytest.raises(ConfigInvalid) as err:
        validate(document)
    assert err.value.field == field


def test_004_load_config(tmp_path):
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps({"seed": 1, "checks": list(CHECKS[:2])}))
    config = load_config(str(path))
    assert config.checks == CHECKS[:2]
    broken = tmp_path / "broken.json"
    broken.write_text("{seed: 1")
    with pytest.raises(ConfigInvalid):
        load_config(str(broken))


def test_005_as_dict_is_json():
    config = validate({"seed": 0, "checks": ["cover"]})
    data = config.as_dict()
    assert data["manifold"]["kind"] == "flat_torus"
    assert data["epsilon"] == 0.1
