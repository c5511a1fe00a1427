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

section = "flat_torus_2d"


def settings(name=section):
    """Returns the options of one section of settings.cfg as strings."""
    try:
        import ConfigParser
    except ImportError:
        import configparser as ConfigParser

    import os

    config = ConfigParser.RawConfigParser()
    config.read(os.path.join(os.path.dirname(__file__), 'settings.cfg'))
    return dict(config.items(name))


def custom_setup(name=section):
    """Builds the metric described by a settings section."""
    from lir_lab.common.parse import parse_grid
    from lir_lab.geometry.metric import build_metric
    from lir_lab.geometry.model import build_model

    options = settings(name)
    grid = parse_grid(options["grid"])
    model = build_model(options.get("kind", "flat_torus"), len(grid),
                        amplitude=float(options.get("amplitude", 0.0)))
    return build_metric(model, grid)


def grids(name, key="grids"):
    from lir_lab.common.parse import parse_grid

    return [parse_grid(text) for text in settings(name)[key].split(",")]
