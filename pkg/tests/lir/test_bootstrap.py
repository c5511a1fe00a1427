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

from lir_lab.elliptic.harmonic import harmonic_basis, harmonic_projection
from lir_lab.elliptic.operator import dirac_operator
from lir_lab.exponents.sobolev import exponent_chain
from lir_lab.geometry.metric import build_metric
from lir_lab.geometry.model import build_model
from lir_lab.lir.bootstrap import BOOTSTRAP_INTERPOLATED, BOOTSTRAP_W, \
    ChainTrace, bootstrap, walk_chain
from lir_lab.lir.family import Member, random_data
from ..settings.info import settings

trace = None
report = None
samples = None


def setup_module():
    global trace, report, samples
    options = settings("dirac_3d")
    shape = tuple(int(n) for n in options["grid"].split("x"))
    samples = int(options["samples"])
    metric = build_metric(build_model("flat_torus", 3), shape)
    op = dirac_operator(metric)
    basis = harmonic_basis(op)
    data = [Member(m.name, m.section - harmonic_projection(m.section, basis))
            for m in random_data(metric, samples, seed=7, rank=2)]
    trace, report = bootstrap(op, data, (0, 0, 0), [1.0, 0.5], 4,
                              basis=basis)


def test_001_single_chain_step():
    assert [str(t) for t in trace.chain.terms] == ["2", "6", "inf"]
    assert [str(t) for t in trace.walked] == ["2", "6"]
    assert trace.steps == 1
    assert trace.bound == 2
    assert trace.matches_chain
    assert trace.respects_bound


def test_002_inequality_holds_on_every_instance():
    assert len(report.instances) == 2 * samples
    assert report.passed
    assert all(item["holds"] for item in report.instances)


def test_003_companion_forms():
    assert report.metadata[BOOTSTRAP_W]["passed"]
    assert report.metadata[BOOTSTRAP_INTERPOLATED]["passed"]
    assert report.metadata["trace"]["l"] == 1


def test_004_levels_recorded():
    assert len(trace.levels) == 2 * samples
    assert all(len(level["norms"]) == 2 for level in trace.levels)
    assert len(trace.solutions) == samples


@pytest.mark.parametrize("n, m, r, walked", [
    (3, 1, 4, ["2", "6"]),
    (3, 1, 7, ["2", "6", "inf"]),
    (6, 2, 6, ["2", "6", "inf"]),
    (3, 2, 5, ["2", "inf"]),
])
def test_005_walk_follows_chain(n, m, r, walked):
    steps = walk_chain(n, m, r)
    assert [str(t) for t in steps] == walked
    assert len(steps) - 1 == exponent_chain(n, m, r).l


def test_006_step_count_disagreement_is_reported():
    chain = exponent_chain(3, 1, 4)
    longer = ChainTrace(chain=chain, bound=2, walked=walk_chain(3, 1, 7))
    assert longer.steps == 2
    assert not longer.matches_chain
    assert not longer.respects_bound
    assert longer.as_dict()["matches_chain"] is False
    tight = ChainTrace(chain=chain, bound=0, walked=walk_chain(3, 1, 4))
    assert tight.matches_chain
    assert not tight.respects_bound
