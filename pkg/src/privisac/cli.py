"""``simulate`` command line entry point.

Exit status: 0 on success, 2 on invalid input, 3 on I/O failure.
"""
import argparse
import sys

from .experiments import ExperimentKind, ExperimentSpec, run_experiment

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3


def _values(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}") from None


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="simulate", description=__doc__.splitlines()[0])
    p.add_argument("--scenario", required=True,
                   help="scenario TOML file, or a bundled name (default_fig3, default_fig4)")
    p.add_argument("--experiment", required=True, choices=[k.value for k in ExperimentKind])
    p.add_argument("--values", type=_values, default=None,
                   help="comma list: jammer counts, or transmit powers in watts")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    values = args.values
    if values is None:
        values = [0.0] if args.experiment != ExperimentKind.RIS_POWER_SWEEP.value else [1.0]
    try:
        spec = ExperimentSpec(ExperimentKind(args.experiment), tuple(values), args.trials,
                              args.seed, args.scenario, args.out, args.workers)
        _, written = run_experiment(spec)
    except OSError as exc:
        print(f"simulate: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"simulate: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
