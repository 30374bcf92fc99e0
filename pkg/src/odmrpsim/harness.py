"""Experiment harness: single runs, grid sweeps, deterministic CSV output.

A sweep is a cartesian grid over (senders, receivers, attackers, max_speed)
with a fixed number of seeded replications per cell. Every cell runs in its
own engine with seed = base_seed + replication index, so the same seeds
recur across cells and attacker-count cells differ only in how many extra
nodes turn hostile. Rows are emitted in grid order then seed order, byte
identical regardless of parallelism.
"""

import os
from dataclasses import dataclass, field, replace
from multiprocessing import Pool

from .scenario import ScenarioConfig, ScenarioError, parse_scenario_text
from .simulation import Simulation

CSV_COLUMNS = (
    "run_id", "seed", "node_count", "senders", "receivers", "attackers",
    "attack_mode", "max_speed_mps", "duration_s", "generated",
    "expected_deliveries", "delivered", "pdr", "avg_delay_ms",
    "dropped_by_attackers", "control_overhead",
)

CSV_HEADER = ",".join(CSV_COLUMNS)


@dataclass
class SweepSpec:
    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    senders: list = field(default_factory=lambda: [1, 3])
    receivers: list = field(default_factory=lambda: [20, 30])
    attackers: list = field(default_factory=lambda: [0, 1, 3, 5])
    max_speed: list = field(default_factory=lambda: [0, 10, 20, 30, 40, 50])
    replications: int = 20

    def validate(self):
        if self.replications < 1:
            raise ScenarioError(f"replications={self.replications} violates: >= 1")
        for cfg, _ in self.cells():
            cfg.validate()
        return self

    def cells(self):
        """Yield (scenario, run_id) per grid cell x replication, in order."""
        for s in self.senders:
            for r in self.receivers:
                for a in self.attackers:
                    for v in self.max_speed:
                        for k in range(self.replications):
                            cfg = replace(self.base, senders=s, receivers=r,
                                          attackers=a, v_max=float(v),
                                          seed=self.base.seed + k)
                            yield cfg, f"s{s}_r{r}_a{a}_v{v:g}_k{k}"

    def row_count(self):
        return (len(self.senders) * len(self.receivers) * len(self.attackers)
                * len(self.max_speed) * self.replications)


_AXIS_KEYS = ("senders", "receivers", "attackers", "max_speed", "replications")


def parse_sweep_text(text):
    """Sweep spec files reuse the scenario syntax; axis keys take CSV lists."""
    axis = {}
    base_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.partition("=")[0].strip()
        if key in _AXIS_KEYS:
            value = line.partition("=")[2].strip()
            try:
                if key == "replications":
                    axis[key] = int(value)
                else:
                    axis[key] = [float(x) if key == "max_speed" else int(x)
                                 for x in value.split(",")]
            except ValueError as e:
                raise ScenarioError(f"line {lineno}: bad axis value for {key}: {e}") from e
        else:
            base_lines.append(line)
    base = parse_scenario_text("\n".join(base_lines))
    return SweepSpec(base=base, **axis).validate()


def load_sweep(source):
    text = source
    if hasattr(source, "read_text"):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str) and "=" not in source and "\n" not in source:
        text = open(source, encoding="utf-8").read() if source else ""
    return parse_sweep_text(text)


def run_scenario(cfg, trace=None):
    """Execute one scenario to completion and return its RunResult."""
    return Simulation(cfg, trace=trace).run()


def format_row(run_id, result):
    """One CSV row with fixed numeric formatting (stable across platforms)."""
    delay = "nan" if result.avg_delay_ms != result.avg_delay_ms \
        else f"{result.avg_delay_ms:.3f}"
    return ",".join((
        run_id, str(result.seed), str(result.node_count), str(result.senders),
        str(result.receivers), str(result.attackers), result.attack_mode,
        f"{result.max_speed_mps:g}", f"{result.duration_s:g}",
        str(result.generated), str(result.expected_deliveries),
        str(result.delivered), f"{result.pdr:.6f}", delay,
        str(result.dropped_by_attackers), str(result.control_overhead),
    ))


def _run_cell(args):
    cfg, run_id = args
    try:
        return format_row(run_id, run_scenario(cfg))
    except Exception as e:
        raise RuntimeError(f"sweep cell {run_id} failed: {e}") from e


def run_sweep(spec, parallel=1):
    """Run the full grid; returns the CSV document as a string."""
    spec.validate()
    cells = list(spec.cells())
    if parallel > 1:
        with Pool(parallel) as pool:
            rows = pool.map(_run_cell, cells, chunksize=4)
    else:
        rows = [_run_cell(c) for c in cells]
    return CSV_HEADER + "\n" + "\n".join(rows) + "\n"


def default_parallelism():
    return os.cpu_count() or 1
