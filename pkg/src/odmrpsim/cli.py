"""Command-line interface: single runs, sweeps, and traced runs."""

import argparse
import sys

from .harness import default_parallelism, format_row, load_sweep, run_scenario, \
    run_sweep, CSV_HEADER
from .scenario import ScenarioConfig, ScenarioError, load_scenario, \
    parse_scenario_text
from .simulation import Simulation, Trace


def _load_with_overrides(path, overrides, seed):
    cfg = load_scenario(path) if path else ScenarioConfig()
    if overrides:
        cfg = parse_scenario_text("\n".join(overrides), base=cfg)
    if seed is not None:
        cfg = parse_scenario_text(f"seed={seed}", base=cfg)
    return cfg.validate()


def _print_result(result):
    delay = "undefined" if result.avg_delay_ms != result.avg_delay_ms \
        else f"{result.avg_delay_ms:.3f} ms"
    print(f"pdr={result.pdr:.6f}{'' if result.pdr_defined else ' (0/0)'} "
          f"avg_delay={delay} generated={result.generated} "
          f"delivered={result.delivered}/{result.expected_deliveries} "
          f"attacker_drops={result.dropped_by_attackers} "
          f"control={result.control_overhead}")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="odmrpsim",
        description="ODMRP multicast simulator with black hole adversaries")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single scenario")
    p_run.add_argument("scenario", nargs="?", help="scenario file (key=value)")
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--out", help="append the result as a CSV row here")
    p_run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a scenario key (repeatable)")

    p_sweep = sub.add_parser("sweep", help="run an experiment grid")
    p_sweep.add_argument("spec", nargs="?", help="sweep spec file")
    p_sweep.add_argument("--out", help="CSV output path (default stdout)")
    p_sweep.add_argument("--seed", type=int, help="override the base seed")
    p_sweep.add_argument("--parallel", type=int, default=default_parallelism(),
                         metavar="N", help="worker processes (default: CPUs)")

    p_trace = sub.add_parser("trace", help="run one scenario with a JSON trace")
    p_trace.add_argument("scenario", nargs="?")
    p_trace.add_argument("--seed", type=int)
    p_trace.add_argument("--out", required=True, help="ndjson trace path")
    p_trace.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = _load_with_overrides(args.scenario, args.set, args.seed)
            result = run_scenario(cfg)
            _print_result(result)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(CSV_HEADER + "\n" + format_row("run", result) + "\n")
        elif args.command == "sweep":
            spec = load_sweep(args.spec) if args.spec else load_sweep("")
            if args.seed is not None:
                spec.base = parse_scenario_text(f"seed={args.seed}", base=spec.base)
            csv_text = run_sweep(spec, parallel=max(args.parallel, 1))
            if args.out:
                with open(args.out, "w", encoding="utf-8", newline="") as fh:
                    fh.write(csv_text)
                print(f"{spec.row_count()} rows -> {args.out}")
            else:
                sys.stdout.write(csv_text)
        else:  # trace
            cfg = _load_with_overrides(args.scenario, args.set, args.seed)
            trace = Trace()
            result = Simulation(cfg, trace=trace).run()
            trace.save(args.out)
            _print_result(result)
            print(f"{len(trace.records)} trace records -> {args.out}")
    except ScenarioError as e:
        parser.exit(2, f"error: {e}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
