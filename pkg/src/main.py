import argparse
import os
import sys
from typing import Any, Dict, List, Optional

import dotenv

from common import (
    EXIT_NUMERICAL,
    EXIT_USAGE,
    NumericalError,
    UsageError,
    print_colored,
)
from config import DIPOLAR_UNITS, PRESETS, build_config, read_config
from relaxation_model import COUPLINGS, SPECTRAL_MODES
from metrics_mpemba import METRICS
from experiments import FAULTS, run_experiment, validate_suite

DEFAULT_CONFIG = "config.json"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="main.py",
        description="Mpemba relaxation experiments for a dipolar-coupled spin pair",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = commands.add_parser("run", help="Propagate far and near states and detect the crossing")
    run.add_argument("--config", help=f"Config file (default ./{DEFAULT_CONFIG} when present)")
    run.add_argument("--preset", choices=tuple(PRESETS))
    run.add_argument("--theta", type=float, help="Near-state angle in degrees")
    run.add_argument("--epsilon", type=float)
    run.add_argument("--tau-c", type=float, help="Correlation time in ps")
    run.add_argument("--b", type=float, help="Dipolar coupling in kHz")
    run.add_argument("--b-unit", choices=DIPOLAR_UNITS)
    run.add_argument("--coupling", choices=COUPLINGS)
    run.add_argument("--channels", help="Comma-separated: dipolar, csa, cross")
    run.add_argument("--spectral-mode", choices=SPECTRAL_MODES)
    run.add_argument("--metric", choices=METRICS)
    run.add_argument("--t-max", type=float, help="Last time point in units of 1/K0")
    run.add_argument("--points", type=int)
    units = run.add_mutually_exclusive_group()
    units.add_argument("--dimensionless", dest="dimensionless", action="store_true", default=None)
    units.add_argument("--physical", dest="dimensionless", action="store_false")
    run.add_argument("--rescale", dest="rescale_by_epsilon", action="store_true", default=None)
    run.add_argument("--output", dest="output_path")

    validate = commands.add_parser("validate", help="Run the invariant battery")
    validate.add_argument("--config")
    validate.add_argument("--trials", type=int, default=100)
    validate.add_argument("--seed", type=int, default=7)
    validate.add_argument("--inject-fault", choices=tuple(FAULTS))
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "preset": args.preset,
        "theta_degrees": args.theta,
        "epsilon": args.epsilon,
        "tau_c": args.tau_c,
        "b": args.b,
        "b_unit": args.b_unit,
        "coupling": args.coupling,
        "channels": args.channels,
        "spectral_mode": args.spectral_mode,
        "metric": args.metric,
        "t_max": args.t_max,
        "points": args.points,
        "dimensionless": args.dimensionless,
        "rescale_by_epsilon": args.rescale_by_epsilon,
        "output_path": args.output_path,
    }


def load_config(path: Optional[str], overrides: Optional[Dict[str, Any]] = None):
    """An explicit path must exist, the default config.json is optional."""
    if path is not None:
        if not os.path.isfile(path):
            raise UsageError(f"Config file not found: {path}")
        return read_config(path, overrides)
    default = os.path.join(os.getcwd(), DEFAULT_CONFIG)
    if os.path.isfile(default):
        return read_config(default, overrides)
    return build_config({}, overrides)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        # Load environment variables
        dotenv.load_dotenv()

        args = build_parser().parse_args(argv)
        if args.command == "run":
            config = load_config(args.config, _overrides(args))
            return run_experiment(config).status

        config = load_config(args.config)
        summary = validate_suite(config, args.inject_fault, args.trials, args.seed)
        return summary.exit_status
    except UsageError as e:
        print_colored(f"Error: {e}", "red")
        return EXIT_USAGE
    except NumericalError as e:
        print_colored(f"Numerical error: {e}", "red")
        return EXIT_NUMERICAL
    except Exception as e:
        print_colored(f"Unexpected error: {e}", "red")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
