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

import pytest

from lir_lab.common.exception import ConfigInvalid, InjectionRejected, \
    LirOperationError, NotAdmissible


def test_001_message_names_operation():
    err = LirOperationError("build_metric", "resolution too small")
    assert err.operation == "build_metric"
    assert "build_metric" in str(err)
    assert "resolution too small" in str(err)


def test_002_payloads():
    err = NotAdmissible("admissible_radius", "fails", node=3, value=0.0)
    assert err.node == 3
    assert InjectionRejected("inject_radius_field", "bad",
                             pair=(1, 2)).pair == (1, 2)
    with pytest.raises(LirOperationError):
        raise ConfigInvalid("epsilon", "must lie in (0, 1)")


def test_003_config_invalid_field():
    err = ConfigInvalid("manifold.kind", "unknown kind")
    assert err.field == "manifold.kind"
    assert "manifold.kind" in str(err)
