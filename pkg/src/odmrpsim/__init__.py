"""Deterministic ODMRP multicast simulator with black hole adversaries."""

from .adversary import AttackConfig, BlackHole, select_attackers
from .engine import Engine, EventKind, SchedulingError
from .harness import SweepSpec, load_sweep, run_scenario, run_sweep
from .metrics import MetricsAccumulator, MetricsError, RunResult
from .mobility import MobilityConfig, RandomWaypoint
from .node import Node, ProtocolConfig
from .packets import DataPacket, JoinReply, JoinRequest
from .radio import Radio, RadioConfig
from .rng import RandomSource
from .scenario import ScenarioConfig, ScenarioError, load_scenario, \
    parse_scenario_text, serialize_scenario
from .simulation import Simulation, Trace

__version__ = "0.1.0"
