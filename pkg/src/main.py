"""Main entry point for SteerLab."""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.config import load_sweep_config, settings
from src.core.errors import InvalidArgumentError
from src.protocol.checks import GRID_VALUES, closed_form_report, optimum_report
from src.protocol.scenarios import Case, Objective
from src.quantum.channel import ReservoirParams
from src.quantum.measures import werner_entanglement_threshold, werner_steering_threshold
from src.sweep.figures import FIGURES, figure
from src.sweep.output import format_value, open_sink
from src.sweep.probe import gt_probe, write_probe
from src.sweep.runner import run_sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

logger = logging.getLogger(__name__)


def setup_logging(debug: bool = False):
    """Configure logging for the application (stderr, so CSV on stdout stays clean)."""
    log_level = logging.DEBUG if (debug or settings.debug) else logging.INFO

    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
        ]
    )


def _reservoir_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--gamma0", type=float, default=None, help="excited-state decay rate (default 1.0)")
    parser.add_argument("--lambda", dest="lam", type=float, default=None, help="reservoir spectral width (default 0.1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steerlab",
        description="Entanglement and steering of Werner states under non-Markovian damping with WM/WMR protection",
    )
    parser.add_argument("--debug", action="store_true", help="enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate one scenario over a time grid")
    sweep.add_argument("--config", help="JSON file with sweep keys; flags override it")
    sweep.add_argument("--case", choices=[c.value for c in Case], type=str.lower, default=None)
    sweep.add_argument("--p", type=float, default=None, help="Werner parameter")
    sweep.add_argument("--m", type=float, default=None, help="WM strength")
    sweep.add_argument("--mr", default=None, help="WMR strength, 'analytic' or 'numeric'")
    _reservoir_flags(sweep)
    sweep.add_argument("--t-start", type=float, default=None)
    sweep.add_argument("--t-end", type=float, default=None)
    sweep.add_argument("--t-steps", type=int, default=None)
    sweep.add_argument("--objective", choices=[o.value for o in Objective], default=None,
                       help="objective of the numeric reversal search")
    sweep.add_argument("--allow-markovian", action="store_true", default=None,
                       help="permit lambda > 2*gamma0")
    sweep.add_argument("--out", default=None, help="output CSV path, '-' for stdout")
    sweep.add_argument("--threads", type=int, default=None, help="worker cap (overrides STEERLAB_THREADS)")

    fig = sub.add_parser("figure", help="regenerate the CSV data of figure 2..8 (or 'all')")
    fig.add_argument("n", help="figure number or 'all'")
    fig.add_argument("--out-dir", default=None, help=f"output directory (default {settings.output_dir})")
    fig.add_argument("--p", type=float, default=None, help="Werner parameter of figures 2 and 5")
    fig.add_argument("--points", type=int, default=None, help="points per curve")
    fig.add_argument("--surface-points", type=int, default=None, help="points per surface axis")
    _reservoir_flags(fig)
    fig.add_argument("--threads", type=int, default=None)

    probe = sub.add_parser("gt-probe", help="tabulate the decay factor G_t")
    _reservoir_flags(probe)
    probe.add_argument("--t-start", type=float, default=0.0)
    probe.add_argument("--t-end", type=float, default=30.0)
    probe.add_argument("--step", type=float, default=0.05)
    probe.add_argument("--allow-markovian", action="store_true")
    probe.add_argument("--out", default="-")

    sub.add_parser("threshold", help="print the Werner entanglement and steering thresholds")

    verify = sub.add_parser("verify", help="compare closed forms with the composed channel")
    verify.add_argument("--optimum", action="store_true",
                        help="also compare closed-form optimal mr with the numeric argmax per objective")
    verify.add_argument("--grid", type=float, nargs="+", default=list(GRID_VALUES),
                        help="values used for every grid axis (default 0.1 0.3 0.5 0.7 0.9)")
    return parser


def _reservoir(args) -> ReservoirParams:
    return ReservoirParams(
        gamma0=settings.gamma0 if args.gamma0 is None else args.gamma0,
        lam=settings.lambda_ if args.lam is None else args.lam,
    )


def cmd_sweep(args) -> int:
    overrides = {
        "case": args.case,
        "p": args.p,
        "m": args.m,
        "mr": args.mr,
        "gamma0": args.gamma0,
        "lambda": args.lam,
        "t_start": args.t_start,
        "t_end": args.t_end,
        "t_steps": args.t_steps,
        "objective": args.objective,
        "allow_markovian": args.allow_markovian,
        "out": args.out,
    }
    config = load_sweep_config(args.config, overrides)
    run_sweep(config, args.threads)
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.n.lower() == "all":
        numbers = list(FIGURES)
    else:
        try:
            numbers = [int(args.n)]
        except ValueError:
            raise InvalidArgumentError(f"Figure must be a number in 2..8 or 'all', got {args.n!r}")
    reservoir = _reservoir(args)
    for n in numbers:
        figure(
            n,
            out_dir=args.out_dir,
            p=args.p,
            curve_points=args.points,
            surface_points=args.surface_points,
            reservoir=reservoir,
            threads=args.threads,
        )
    return EXIT_OK


def cmd_gt_probe(args) -> int:
    reservoir = _reservoir(args)
    rows = gt_probe(reservoir, args.t_start, args.t_end, args.step, args.allow_markovian)
    with open_sink(args.out) as sink:
        write_probe(sink, reservoir, rows)
    return EXIT_OK


def cmd_threshold(args) -> int:
    print(f"entanglement,{format_value(werner_entanglement_threshold())}")
    print(f"steering,{format_value(werner_steering_threshold())}")
    return EXIT_OK


def cmd_verify(args) -> int:
    print("case,points,max_state_deviation,element,max_concurrence_deviation")
    for case in Case:
        report = closed_form_report(case, args.grid)
        print(
            f"{case.value},{report.points},{format_value(report.max_state_deviation)},"
            f"{report.worst_element},{format_value(report.max_concurrence_deviation)}"
        )
    if args.optimum:
        print("case,objective,max_mr_gap")
        for case in Case:
            gaps = optimum_report(case, 0.9, args.grid, args.grid)
            for objective, gap in gaps.items():
                print(f"{case.value},{objective.value},{format_value(gap)}")
    return EXIT_OK


COMMANDS = {
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "gt-probe": cmd_gt_probe,
    "threshold": cmd_threshold,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    setup_logging(args.debug)

    try:
        return COMMANDS[args.command](args)
    except (ValidationError, ValueError) as e:
        logger.error(f"❌ Invalid input: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"❌ I/O error: {e}")
        return EXIT_IO
    except ArithmeticError as e:
        logger.error(f"❌ Numeric failure: {e}")
        return EXIT_NUMERIC
    except KeyboardInterrupt:
        logger.info("👋 Interrupted")
        return 130


if __name__ == "__main__":
    sys.exit(main())
