# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2025- qscramble Developers and their Assignees

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

""" Command line driver.

    qscramble spreading|states|tradeoff|synthcheck [flags]

Exit status is 0 on success, 2 if the configuration fails validation and 3 if
a result disagrees with the exact oracle beyond tolerance.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from qscramble.errors import ConfigError, OracleDisagreementError
from qscramble.experiments import (
    RECIPES, RunConfig, load_config, run_spreading, run_state_comparison,
    run_synthesis_check, run_trotter_tradeoff
)
from qscramble.version import VERSION

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DISAGREEMENT = 3

_METHOD_NAMES = {"interf": "interferometric", "direct": "direct"}
_SPLIT_NAMES = {"hzhx": "hz-hx", "term": "per-term"}

# command line flag -> RunConfig field
_FLAG_FIELDS = {
    "n": "n", "J": "J", "hZ": "hZ", "hX": "hX", "order": "order", "dt": "dt",
    "t_start": "t_start", "t_max": "t_max", "stride": "stride", "i": "i", "j": "j",
    "seed": "seed", "out": "out", "evolution": "evolution", "jobs": "jobs",
    "samples": "samples", "shots": "shots", "error_bound": "error_bound",
}


def _common_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, default=None, help="JSON configuration file; flags override it")
    parser.add_argument("--n", type=int, default=None, help="number of spins")
    parser.add_argument("--J", type=float, default=None, help="nearest-neighbour coupling")
    parser.add_argument("--hZ", type=float, default=None, help="longitudinal field")
    parser.add_argument("--hX", type=float, default=None, help="transverse field")
    parser.add_argument("--order", type=int, choices=(1, 2, 4), default=None, help="Trotter order")
    parser.add_argument("--dt", type=float, default=None, help="Trotter step in units of 1/J")
    parser.add_argument("--split", choices=tuple(_SPLIT_NAMES), default=None, help="Hamiltonian splitting")
    parser.add_argument("--t-start", dest="t_start", type=float, default=None, help="first output time")
    parser.add_argument("--t-max", dest="t_max", type=float, default=None, help="last output time")
    parser.add_argument("--stride", type=float, default=None, help="output time spacing")
    parser.add_argument("--i", type=int, default=None, help="site of the butterfly operator W")
    parser.add_argument("--j", type=int, default=None, help="site of the probe operator V")
    parser.add_argument("--seed", type=int, default=None, help="seed for all random draws")
    parser.add_argument("--out", type=str, default=None, help="output directory")
    parser.add_argument("--method", choices=tuple(_METHOD_NAMES), default=None, help="OTOC evaluation method")
    parser.add_argument("--evolution", choices=("trotter", "exact"), default=None, help="time evolution")
    parser.add_argument("--recipes", nargs="+", choices=RECIPES, default=None, help="initial states")
    parser.add_argument("--samples", type=int, default=None, help="random states averaged per recipe")
    parser.add_argument("--jobs", type=int, default=None, help="worker threads")
    parser.add_argument("--shots", type=int, default=None, help="measurements per point (interferometric)")
    parser.add_argument("--error-bound", dest="error_bound", type=float, default=None,
                        help="fail with status 3 if a state error exceeds this bound")
    parser.add_argument("--no-slopes", dest="slopes", action="store_false", default=None,
                        help="skip the error-order fits of the trade-off run")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="qscramble", description="Operator scrambling on the Ising chain.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("spreading", parents=[common], help="C_ij(t) over all j, integrable and chaotic")
    commands.add_parser("states", parents=[common], help="circuit against exact evolution per initial state")
    commands.add_parser("tradeoff", parents=[common], help="accuracy against circuit depth of Trotter plans")
    synth = commands.add_parser("synthcheck", parents=[common], help="Pauli-exponential circuits against dense oracle")
    synth.add_argument("--random-count", dest="random_count", type=int, default=200,
                       help="random strings per size above the exhaustive range")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """ Builds the run configuration: file values first, then flags. """
    doc: Dict[str, Any] = load_config(args.config).to_dict() if args.config else {}
    for flag, name in _FLAG_FIELDS.items():
        value = getattr(args, flag)
        if value is not None:
            doc[name] = value
    if args.method is not None:
        doc["method"] = _METHOD_NAMES[args.method]
    if args.split is not None:
        doc["split"] = _SPLIT_NAMES[args.split]
    if args.recipes is not None:
        doc["recipes"] = args.recipes
    if args.slopes is not None:
        doc["slopes"] = args.slopes
    return RunConfig.from_dict(doc).validate()


def _synthcheck(config: RunConfig, random_count: int) -> int:
    frame = run_synthesis_check(random_count=random_count, seed=config.seed)
    table = frame.groupby("n").agg(
        cases=("pass", "size"), passed=("pass", "sum"), max_distance=("distance", "max")
    )
    print(table.to_string())
    if not frame["pass"].all():
        failing = frame[~frame["pass"]]
        raise OracleDisagreementError(f"{len(failing)} synthesized circuits disagree with the dense exponential")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        config = config_from_args(args)
        if args.command == "synthcheck":
            return _synthcheck(config, args.random_count)
        runners = {"spreading": run_spreading, "states": run_state_comparison, "tradeoff": run_trotter_tradeoff}
        runners[args.command](config)
        logger.info("results written to %s", config.out)
    except OracleDisagreementError as e:
        logger.error("oracle disagreement: %s", e)
        return EXIT_DISAGREEMENT
    except (ConfigError, ValueError, TypeError) as e:
        logger.error("invalid configuration: %s", e)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
