"""Command-line entry point: sweep CSV in, chart directory out."""

import argparse
import sys

from .charts import METRICS, ReportError, report_all


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="odmrpreport",
        description="Render metric-vs-speed charts from a sweep CSV")
    parser.add_argument("csv", help="sweep CSV path")
    parser.add_argument("out", help="output directory")
    parser.add_argument("--senders", type=int, action="append",
                        help="restrict to this senders value (repeatable)")
    parser.add_argument("--receivers", type=int, action="append",
                        help="restrict to this receivers value (repeatable)")
    parser.add_argument("--metric", choices=METRICS,
                        help="render only one metric (default: both)")
    args = parser.parse_args(argv)
    try:
        written = report_all(args.csv, args.out, senders=args.senders,
                             receivers=args.receivers, metric=args.metric)
    except (OSError, ReportError) as e:
        parser.exit(2, f"error: {e}\n")
    print(f"{len(written)} files -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
