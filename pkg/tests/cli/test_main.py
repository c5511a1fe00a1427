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

import csv
import json
import logging
import math
import os

import pytest

from lir_lab.cli.config import validate
from lir_lab.cli.main import main
from lir_lab.cli.runner import run

from ..settings.info import settings


def setup_module(module):
    global cover_settings
    cover_settings = settings("cover")


def test_001_exponents_subcommand(tmp_path, capsys):
    status = main(["exponents", "--n", "3", "--m", "1", "--r", "4",
                   "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert status == 0
    assert "chain (2, 6, inf), l = 1, step bound 2" in out
    assert "verdict: pass" in out
    assert os.path.exists(str(tmp_path / "report.json"))


def test_002_bad_config_exit_status(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"seed": 0, "epsilon": 1.5}))
    assert main(["run", "--config", str(path),
                 "--out", str(tmp_path)]) == 2
    path.write_text("{not json")
    assert main(["run", "--config", str(path),
                 "--out", str(tmp_path)]) == 2


def test_003_empty_checks(tmp_path):
    report = run(validate({"seed": 0}), out=str(tmp_path))
    assert report.verdict
    assert report.stages == {}
    with open(str(tmp_path / "report.json")) as handle:
        data = json.load(handle)
    assert data["verdict"] is True
    assert "numpy" in data["environment"]


def test_004_cover_and_local_estimate(tmp_path):
    config = validate({"seed": 0, "grid": "64x64",
                       "checks": ["cover", "local_estimate"]})
    report = run(config, out=str(tmp_path))
    assert "cover" in report.asserted
    assert "local_estimate" in report.informational
    record = report.stages["cover"]
    assert record["max_overlap"] <= float(cover_settings["overlap_bound"])
    assert report.asserted["cover"]


def test_005_same_seed_same_report():
    config = validate({"seed": 7, "grid": "32x32",
                       "checks": ["radius", "cover"]})
    first = run(config, write=False).as_dict(timing=False)
    second = run(config, write=False).as_dict(timing=False)
    assert json.dumps(first, sort_keys=True, default=str) == \
        json.dumps(second, sort_keys=True, default=str)


def test_006_report_subcommand(tmp_path, capsys):
    report = {"stages": {"local_estimate": {
        "identifier": "LIR(r=2)", "instances": [],
        "radius_profile": {"1.0": 1.0, "0.5": 0.7}}}}
    path = tmp_path / "report.json"
    path.write_text(json.dumps(report))
    assert main(["report", "--report", str(path),
                 "--out", str(tmp_path / "plots")]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith(".svg")


def test_007_cover_and_radius_tables(tmp_path, caplog):
    config = validate({"seed": 0, "grid": "32x32",
                       "checks": ["radius", "cover"]})
    with caplog.at_level(logging.WARNING, logger="lir_lab.cli.runner"):
        report = run(config, out=str(tmp_path))
    record = report.stages["cover"]
    with open(str(tmp_path / "cover.csv"), newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == record["balls"]
    assert list(rows[0]) == ["index", "i0", "i1", "y0", "y1", "seed_radius"]
    spacing = 2 * math.pi / 32
    for row in rows:
        for axis in ("0", "1"):
            assert float(row["y" + axis]) == \
                pytest.approx(int(row["i" + axis]) * spacing)
    assert min(float(row["seed_radius"]) for row in rows) == \
        pytest.approx(record["min_seed_radius"])
    with open(str(tmp_path / "radius.csv"), newline="") as handle:
        header = next(csv.reader(handle))
    assert header == ["i0", "i1", "y0", "y1", "radius"]
    assert record["grid_spacing"] == pytest.approx(spacing)
    assert record["resolved"] == \
        (record["min_seed_radius"] >= record["grid_spacing"])
    assert record["resolved"] is False
    assert "below the grid spacing" in caplog.text


@pytest.mark.parametrize("samples,expected", [(None, 10), (4, 4)])
def test_008_decomposition_sample_count(samples, expected):
    document = {"seed": 0, "grid": "16x16", "checks": ["decomposition"]}
    if samples is not None:
        document["samples"] = samples
    report = run(validate(document), write=False)
    rows = report.stages["decomposition"]["samples"]
    assert len(rows) == expected
    assert report.asserted["decomposition"]
