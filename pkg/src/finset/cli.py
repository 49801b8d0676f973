"""Command-line interface: partition, resample, and benchmark to CSV.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 particle collapse.
Reals are serialized with shortest round-trip formatting; output is RFC-4180
style CSV with a header row and LF line endings, written to --output or
stdout. The default seed can be overridden with the FINSET_SEED environment
variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from .model import (
    BenchmarkConfig,
    ModelParams,
    ParticleCollapseError,
    aggregate_mean_sv,
    run_benchmark,
)
from .partition import ValidationError, as_weights, lmse_partition, mae, mse, residuals
from .resampling import RESAMPLERS, sampling_variance
from .rng import RngStream

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_COLLAPSE = 4


def _fmt(x) -> str:
    return repr(float(x))


def _parse_weights(args) -> list[float]:
    if args.weights is not None:
        try:
            return [float(s) for s in args.weights.split(",") if s.strip()]
        except ValueError as e:
            raise ValidationError(f"unparsable weight list: {e}") from e
    vals = []
    with open(args.weights_file, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            first = line.split(",")[0].strip()
            try:
                vals.append(float(first))
            except ValueError as e:
                raise ValidationError(f"unparsable weight {first!r}") from e
    return vals


def _emit(lines, path):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_partition(args) -> int:
    w = as_weights(_parse_weights(args))
    alloc = lmse_partition(w, args.n)
    res = residuals(w, args.n)
    lines = ["index,weight,expected,size,residual"]
    for i in range(len(w)):
        lines.append(
            f"{i},{_fmt(w.weights[i])},{_fmt(args.n * w.weights[i])},"
            f"{alloc.sizes[i]},{_fmt(res.residuals[i])}"
        )
    lines.append(f"mse={_fmt(mse(alloc, w))},mae={_fmt(mae(alloc, w))}")
    _emit(lines, args.output)
    return EXIT_OK


def cmd_resample(args) -> int:
    w = as_weights(_parse_weights(args))
    rng = RngStream(args.seed)
    counts = RESAMPLERS[args.method](w, args.n, rng)
    lines = ["index,weight,count"]
    for i in range(len(w)):
        lines.append(f"{i},{_fmt(w.weights[i])},{counts.sizes[i]}")
    lines.append(f"sv={_fmt(sampling_variance(counts, w))}")
    _emit(lines, args.output)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    config = BenchmarkConfig(
        num_particles=args.particles,
        num_steps=args.steps,
        num_mc_runs=args.runs,
        seed=args.seed,
        methods=tuple(args.methods.split(",")),
        baseline_method=args.baseline,
        resample_each_step=not args.no_step_resampling,
    )
    records = run_benchmark(config, ModelParams())
    lines = ["run,t,x_true,y_obs,method,estimate,sv"]
    for rec in records:
        for m in config.methods:
            lines.append(
                f"{rec.run},{rec.t},{_fmt(rec.x_true)},{_fmt(rec.y_obs)},"
                f"{m},{_fmt(rec.estimates[m])},{_fmt(rec.sv[m])}"
            )
    _emit(lines, args.output)

    agg = aggregate_mean_sv(records)
    agg_lines = ["t,method,mean_sv"]
    for (t, m) in sorted(agg, key=lambda k: (k[0], config.methods.index(k[1]))):
        agg_lines.append(f"{t},{m},{_fmt(agg[(t, m)])}")
    agg_path = args.aggregate
    if agg_path is None and args.output is not None:
        root, ext = os.path.splitext(args.output)
        agg_path = f"{root}_agg{ext or '.csv'}"
    _emit(agg_lines, agg_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("FINSET_SEED", "0"))
    parser = argparse.ArgumentParser(
        prog="finset",
        description="Proportional integer partitioning and particle resampling tools",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_weight_args(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--weights", help="comma-separated proportions")
        src.add_argument("--weights-file", help="CSV file, one weight per row")
        p.add_argument("--n", type=int, required=True, help="total units to assign")
        p.add_argument("--output", help="output CSV path (default stdout)")

    p_part = sub.add_parser("partition", help="integer partition minimizing MSE")
    add_weight_args(p_part)
    p_part.set_defaults(func=cmd_partition)

    p_res = sub.add_parser("resample", help="resample counts for one scheme")
    add_weight_args(p_res)
    p_res.add_argument("--method", required=True, choices=sorted(RESAMPLERS))
    p_res.add_argument("--seed", type=int, default=default_seed)
    p_res.set_defaults(func=cmd_resample)

    p_bench = sub.add_parser("benchmark", help="SIR filter resampling comparison")
    p_bench.add_argument("--particles", type=int, default=100)
    p_bench.add_argument("--steps", type=int, default=60)
    p_bench.add_argument("--runs", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=default_seed)
    p_bench.add_argument(
        "--methods", default="multinomial,residual,systematic,rsr,msv",
        help="comma-separated subset of the five schemes",
    )
    p_bench.add_argument("--baseline", default="systematic",
                         choices=sorted(RESAMPLERS),
                         help="scheme that advances the shared population")
    p_bench.add_argument("--no-step-resampling", action="store_true",
                         help="never resample the shared population")
    p_bench.add_argument("--output", help="records CSV path (default stdout)")
    p_bench.add_argument("--aggregate",
                         help="mean-sv CSV path (default <output>_agg.csv)")
    p_bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ParticleCollapseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COLLAPSE


if __name__ == "__main__":
    sys.exit(main())
