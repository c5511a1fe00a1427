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
Command line entry point ``lir-lab``.

Every subcommand selects a fixed set of checks and accepts parameter
overrides on top of an optional JSON configuration:

    lir-lab exponents --n 3 --m 1 --r 4
    lir-lab cover --grid 128x128 --epsilon 0.1
    lir-lab verify-global --radius-csv radii.csv --r 4
    lir-lab report --report lir_out/report.json

Exit status is 0 when every asserted check passes, 1 on a failed check and
2 on a configuration or I/O error.
"""
import argparse
import logging
import sys

from ..common.exception import ConfigInvalid, LirOperationError
from .config import read_document, validate
from .export import render_report
from .runner import run

log = logging.getLogger(__name__)

SUBCOMMANDS = {
    "radius": ("radius",),
    "cover": ("radius", "cover"),
    "exponents": ("exponents",),
    "solve": ("ellipticity", "solve", "decomposition", "series"),
    "verify-lir": ("local_estimate", "chain", "local_existence",
                   "bootstrap", "scaling", "comparison"),
    "verify-global": ("radius", "cover", "global_weighted",
                      "interpolation"),
    "double": ("double",),
    "run": None,
}
LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="lir-lab",
        description="Numerical checks of local increasing regularity "
                    "estimates on model manifolds.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON experiment configuration")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help="seed of the test families")
    common.add_argument("--grid", help="nodes per axis, e.g. 64x64")

    for name in SUBCOMMANDS:
        sub = commands.add_parser(name, parents=[common])
        if name == "exponents":
            sub.add_argument("--n", type=int, help="dimension")
            sub.add_argument("--m", type=int, help="operator order")
            sub.add_argument("--r", help="target exponent, e.g. 4 or 7/2")
        elif name == "radius" or name == "cover":
            sub.add_argument("--epsilon", type=float)
            sub.add_argument("--m", type=int)
        elif name == "verify-lir":
            sub.add_argument("--radii", help="radius sweep, e.g. '1, 1/2'")
            sub.add_argument("--r")
        elif name == "verify-global":
            sub.add_argument("--radius-csv", help="injected radius field")
            sub.add_argument("--r")
        elif name == "double":
            sub.add_argument("--length", type=float)
            sub.add_argument("--margin", type=float)
    report = commands.add_parser("report",
                                 help="re-render plots of a JSON report")
    report.add_argument("--report", required=True, help="report.json")
    report.add_argument("--out", help="output directory")
    return parser.parse_args(argv)


def build_document(args):
    """Merges the configuration file with the command line overrides."""
    document = read_document(args.config) if args.config else {}
    if args.seed is not None:
        document["seed"] = args.seed
    document.setdefault("seed", 0)
    if args.grid is not None:
        document["grid"] = args.grid
    if args.out is not None:
        document["output"] = args.out
    for key in ("epsilon", "m", "r", "radii"):
        value = getattr(args, key, None)
        if value is not None:
            document[key] = value
    if getattr(args, "n", None) is not None:
        manifold = dict(document.get("manifold", {}), dimension=args.n)
        document["manifold"] = manifold
        document.pop("grid", None)
    if getattr(args, "radius_csv", None) is not None:
        document["radius"] = {"source": "injected", "csv": args.radius_csv}
    doubling = dict(document.get("doubling", {}))
    for key in ("length", "margin"):
        value = getattr(args, key, None)
        if value is not None:
            doubling[key] = value
    if doubling:
        document["doubling"] = doubling
    checks = SUBCOMMANDS[args.command]
    if checks is not None:
        document["checks"] = list(checks)
    return document


def summarize(report):
    for name, record in sorted(report.stages.items()):
        state = report.asserted.get(name, report.informational.get(name))
        kind = "asserted" if name in report.asserted else "informational"
        print("%-16s %-13s %s" % (name, kind, "pass" if state else "FAIL"))
        if name == "solve":
            print("residual %.3e (tolerance %.0e)"
                  % (record["residual"], record["tolerance"]))
        if name == "exponents":
            print("chain (%s), l = %d, step bound %d"
                  % (", ".join(record["chain"]), record["l"],
                     record["step_bound"]))
    for name, message in sorted(report.errors.items()):
        print("%-16s error         %s" % (name, message))
    print("verdict: %s" % ("pass" if report.verdict else "FAIL"))


def main(argv=None):
    args = parse_args(argv)
    logging.basicConfig(
        level=LEVELS[min(args.verbose, len(LEVELS) - 1)],
        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        if args.command == "report":
            for path in render_report(args.report, args.out):
                print(path)
            return 0
        config = validate(build_document(args))
        report = run(config)
    except ConfigInvalid as err:
        log.error("invalid configuration: %s", err)
        return 2
    except (OSError, LirOperationError) as err:
        log.error("%s", err)
        return 2
    summarize(report)
    return 0 if report.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
