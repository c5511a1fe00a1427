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

"""
This module reads and validates the experiment configuration, a single
versioned JSON document.

Example:
    {
        "version": 1,
        "seed": 0,
        "manifold": {"kind": "flat_torus", "dimension": 2},
        "grid": "64x64",
        "operator": {"kind": "laplacian"},
        "epsilon": 0.1, "m": 2, "r": "2",
        "radii": "1, 1/2, 1/4, 1/8",
        "checks": ["cover", "local_estimate"]
    }
"""
import json
import logging
import math
from dataclasses import asdict, dataclass, field, replace

from ..common.exception import ConfigInvalid, LirOperationError
from ..common.parse import parse_exponent, parse_grid, parse_sweep
from ..elliptic.operator import OPERATORS
from ..geometry.model import MODEL_KINDS

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

CHECKS = ("radius", "cover", "exponents", "ellipticity", "solve",
          "decomposition", "series", "local_estimate", "chain",
          "local_existence", "bootstrap", "global_weighted",
          "interpolation", "scaling", "comparison", "double")


@dataclass(frozen=True)
class ManifoldSpec:
    kind: str = "flat_torus"
    dimension: int = 2
    periods: tuple = None
    amplitude: float = 0.0
    frequency: tuple = None
    boundary_length: float = None


@dataclass(frozen=True)
class OperatorSpec:
    kind: str = "laplacian"
    mass: float = 0.0
    rank: int = 1


@dataclass(frozen=True)
class RadiusSpec:
    """Computed radii, or injected ones from a CSV file or the two-scale
    formula low + (high - low) (1 + cos y_0) / 2."""
    source: str = "computed"
    csv: str = None
    low: float = None
    high: float = None


@dataclass(frozen=True)
class DoublingSpec:
    length: float = math.pi
    margin: float = 0.0
    grid: tuple = (64, 64)


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    manifold: ManifoldSpec = field(default_factory=ManifoldSpec)
    grid: tuple = (64, 64)
    operator: OperatorSpec = field(default_factory=OperatorSpec)
    epsilon: float = 0.1
    m: int = 2
    r: str = "2"
    radii: tuple = (1.0, 0.5, 0.25, 0.125)
    center: tuple = None
    chain_order: int = 1
    samples: int = 10
    radius: RadiusSpec = field(default_factory=RadiusSpec)
    doubling: DoublingSpec = field(default_factory=DoublingSpec)
    checks: tuple = ()
    output: str = "lir_out"
    version: int = SCHEMA_VERSION

    @property
    def r_value(self):
        """r as a float, math.inf for infinity."""
        value = parse_exponent(self.r)
        return math.inf if value is None else float(value)

    @property
    def node(self):
        return tuple(self.center) if self.center is not None else \
            (0,) * len(self.grid)

    def as_dict(self):
        return asdict(self)


def _require(condition, path, message):
    if not condition:
        raise ConfigInvalid(path, message)


def _number(document, key, path, kind=float):
    value = document[key]
    try:
        if isinstance(value, bool):
            raise TypeError(value)
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(path, "expected a number, got %r" % (value,))


def _grid(value, path):
    try:
        if isinstance(value, str):
            return parse_grid(value)
        return tuple(int(v) for v in value)
    except (LirOperationError, TypeError, ValueError) as err:
        raise ConfigInvalid(path, str(err))


def _section(document, key, spec_type):
    block = document.get(key, {})
    _require(isinstance(block, dict), key, "expected an object")
    known = set(spec_type.__dataclass_fields__)
    unknown = sorted(set(block) - known)
    _require(not unknown, "%s.%s" % (key, unknown[0]) if unknown else key,
             "unknown field")
    values = {}
    for name, value in block.items():
        if isinstance(value, list):
            value = tuple(value)
        values[name] = value
    return spec_type(**values)


def validate(document):
    """
    Builds an ExperimentConfig from a parsed JSON document.

    Raises:
        ConfigInvalid: naming the dotted path of the first bad field
    """
    _require(isinstance(document, dict), "", "expected a JSON object")
    _require(document.get("version", SCHEMA_VERSION) == SCHEMA_VERSION,
             "version", "unsupported schema version %r"
             % (document.get("version"),))
    _require("seed" in document, "seed", "a seed is required")
    seed = _number(document, "seed", "seed", int)
    _require(seed >= 0, "seed", "must be nonnegative")
    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = sorted(set(document) - known)
    _require(not unknown, unknown[0] if unknown else "", "unknown field")

    manifold = _section(document, "manifold", ManifoldSpec)
    _require(manifold.kind in MODEL_KINDS, "manifold.kind",
             "unknown kind '%s'" % manifold.kind)
    _require(isinstance(manifold.dimension, int) and manifold.dimension >= 1,
             "manifold.dimension", "must be a positive integer")
    operator = _section(document, "operator", OperatorSpec)
    _require(operator.kind in OPERATORS, "operator.kind",
             "unknown operator '%s'" % operator.kind)
    radius = _section(document, "radius", RadiusSpec)
    _require(radius.source in ("computed", "injected"), "radius.source",
             "must be 'computed' or 'injected'")
    if radius.source == "injected":
        _require(radius.csv is not None or
                 (radius.low is not None and radius.high is not None),
                 "radius", "injected radii need 'csv' or 'low' and 'high'")
    doubling = _section(document, "doubling", DoublingSpec)
    doubling = replace(doubling, grid=_grid(doubling.grid, "doubling.grid"))

    values = {"seed": seed, "manifold": manifold, "operator": operator,
              "radius": radius, "doubling": doubling}
    if "grid" in document:
        values["grid"] = _grid(document["grid"], "grid")
    else:
        values["grid"] = (64,) * manifold.dimension
    _require(len(values["grid"]) == manifold.dimension, "grid",
             "expected %d axes" % manifold.dimension)
    _require(all(n >= 4 for n in values["grid"]), "grid",
             "need at least 4 nodes per axis")
    if "epsilon" in document:
        values["epsilon"] = _number(document, "epsilon", "epsilon")
    _require(0.0 < values.get("epsilon", 0.1) < 1.0, "epsilon",
             "must lie in (0, 1)")
    if "m" in document:
        values["m"] = _number(document, "m", "m", int)
    _require(values.get("m", 2) >= 1, "m", "must be a positive integer")
    if "r" in document:
        values["r"] = str(document["r"])
        try:
            r = parse_exponent(values["r"])
        except LirOperationError as err:
            raise ConfigInvalid("r", str(err))
        _require(r is None or r >= 1, "r", "must be >= 1")
    if "radii" in document:
        raw = document["radii"]
        try:
            sweep = parse_sweep(raw) if isinstance(raw, str) else raw
            values["radii"] = tuple(float(v) for v in sweep)
        except (LirOperationError, TypeError, ValueError) as err:
            raise ConfigInvalid("radii", str(err))
        _require(values["radii"] and all(v > 0 for v in values["radii"]),
                 "radii", "must be positive")
    if "center" in document:
        values["center"] = tuple(int(v) for v in document["center"])
        _require(len(values["center"]) == manifold.dimension, "center",
                 "expected %d indices" % manifold.dimension)
    for key in ("chain_order", "samples"):
        if key in document:
            values[key] = _number(document, key, key, int)
            _require(values[key] >= 0, key, "must be nonnegative")
    checks = tuple(document.get("checks", ()))
    for i, name in enumerate(checks):
        _require(name in CHECKS, "checks[%d]" % i,
                 "unknown check '%s'" % name)
    values["checks"] = checks
    if "output" in document:
        values["output"] = str(document["output"])
    return ExperimentConfig(**values)


def read_document(path):
    """Parses a configuration file without validating it."""
    try:
        with open(path) as handle:
            return json.load(handle)
    except ValueError as err:
        raise ConfigInvalid("", "malformed JSON: %s" % err)


def load_config(path):
    """
    Reads and validates a configuration file.

    Args:
        path (string): JSON file

    Returns:
        ExperimentConfig

    Raises:
        ConfigInvalid: on malformed JSON or a bad field
    """
    config = validate(read_document(path))
    log.debug("loaded configuration %s with checks %s", path, config.checks)
    return config
