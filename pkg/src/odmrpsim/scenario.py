"""Scenario configuration: flat key=value files, validation, defaults.

Defaults follow the evaluated setup: 50 nodes in a 1000 m x 1000 m area,
250 m radio range, random waypoint between 0 and 50 m/s. Unknown keys are
rejected so typos cannot silently fall back to defaults.
"""

import os
from dataclasses import dataclass, fields, replace


class ScenarioError(ValueError):
    pass


def _parse_bool(s):
    v = s.strip().lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


@dataclass
class ScenarioConfig:
    node_count: int = 50
    area_w: float = 1000.0
    area_h: float = 1000.0
    v_min: float = 0.0
    v_max: float = 50.0
    pause: float = 0.0
    range: float = 250.0
    per_hop_latency_ms: float = 2.0
    jitter_ms: float = 1.0
    loss_prob: float = 0.0
    jreq_refresh_s: float = 3.0
    fg_lifetime_s: float = 9.0
    member_lifetime_s: float = 9.0
    legit_reply_delay_ms: float = 1.0
    senders: int = 1
    receivers: int = 20
    attackers: int = 0
    attack_mode: str = "bulk"
    attack_n: int = 1
    attack_t_s: float = 1.0
    attack_p: float = 0.5
    attack_target: int = 0
    forge_replies: bool = True
    data_rate_pps: float = 4.0
    packet_size: int = 512
    duration_s: float = 300.0
    warmup_s: float = 30.0
    seed: int = 1

    def validate(self):
        def fail(key, value, constraint):
            raise ScenarioError(f"{key}={value!r} violates: {constraint}")

        if self.node_count < 1:
            fail("node_count", self.node_count, "node_count >= 1")
        if self.senders < 0 or self.receivers < 0 or self.attackers < 0:
            fail("senders/receivers/attackers",
                 (self.senders, self.receivers, self.attackers), "counts >= 0")
        if self.senders + self.receivers + self.attackers > self.node_count:
            fail("senders+receivers+attackers",
                 self.senders + self.receivers + self.attackers,
                 f"senders + receivers + attackers <= node_count ({self.node_count})")
        if self.duration_s <= 0:
            fail("duration_s", self.duration_s, "duration_s > 0")
        if self.warmup_s < 0:
            fail("warmup_s", self.warmup_s, "warmup_s >= 0")
        if self.data_rate_pps <= 0:
            fail("data_rate_pps", self.data_rate_pps, "data_rate_pps > 0")
        if self.packet_size <= 0:
            fail("packet_size", self.packet_size, "packet_size > 0")
        if self.seed < 0:
            fail("seed", self.seed, "seed >= 0")
        # component configs re-validate their own slices; surface those
        # errors with the scenario key names
        from .adversary import AttackConfig, AttackConfigError
        from .mobility import MobilityConfig
        from .node import ProtocolConfig
        from .radio import RadioConfig
        try:
            MobilityConfig(self.area_w, self.area_h, self.v_min, self.v_max,
                           self.pause).validate()
            RadioConfig(self.range, self.per_hop_latency_ms / 1000.0,
                        self.jitter_ms / 1000.0, self.loss_prob).validate()
            ProtocolConfig(self.jreq_refresh_s, self.fg_lifetime_s,
                           self.member_lifetime_s,
                           self.legit_reply_delay_ms / 1000.0).validate()
            AttackConfig(self.attack_mode, self.attack_n, self.attack_t_s,
                         self.attack_p, self.attack_target, self.forge_replies,
                         self.attackers).validate()
        except (ValueError, AttackConfigError) as e:
            raise ScenarioError(str(e)) from e
        return self


_FIELDS = {f.name: f.type for f in fields(ScenarioConfig)}
_PARSERS = {int: int, float: float, str: lambda s: s.strip(), bool: _parse_bool,
            "int": int, "float": float, "str": lambda s: s.strip(), "bool": _parse_bool}


def parse_scenario_text(text, base=None):
    """Parse flat key=value lines onto defaults (or onto `base`)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _FIELDS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[_FIELDS[key]](value)
        except ValueError as e:
            raise ScenarioError(f"line {lineno}: bad value for {key}: {e}") from e
    cfg = replace(base, **values) if base is not None else ScenarioConfig(**values)
    return cfg.validate()


def load_scenario(source):
    """Load a scenario from a file path or from literal key=value text."""
    text = source
    if hasattr(source, "read_text"):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str) and "=" not in source and "\n" not in source:
        if source and not os.path.exists(source):
            raise ScenarioError(f"scenario file not found: {source}")
        text = open(source, encoding="utf-8").read() if source else ""
    return parse_scenario_text(text)


def serialize_scenario(cfg):
    """Canonical key=value text; load(serialize(c)) == c."""
    lines = []
    for f in fields(ScenarioConfig):
        v = getattr(cfg, f.name)
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, float):
            v = repr(v)
        lines.append(f"{f.name}={v}")
    return "\n".join(lines) + "\n"
