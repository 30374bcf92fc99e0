"""Per-run delivery accounting: packet delivery ratio and end-to-end delay.

PDR uses the per-(packet, receiver) convention: every generated packet adds
the group's receiver count (snapshotted at generation time) to the expected
total, and each unique (receiver, source, seq) delivery counts once. Delay
averages only over delivered pairs and is reported in milliseconds.
"""

from dataclasses import dataclass


class MetricsError(RuntimeError):
    pass


@dataclass
class RunResult:
    pdr: float
    pdr_defined: bool        # False when nothing was expected (0/0)
    avg_delay_ms: float      # NaN when no deliveries occurred
    generated: int
    expected_deliveries: int
    delivered: int
    dropped_by_attackers: int
    control_overhead: int
    # scenario echo
    node_count: int = 0
    senders: int = 0
    receivers: int = 0
    attackers: int = 0
    attack_mode: str = "bulk"
    max_speed_mps: float = 0.0
    duration_s: float = 0.0
    seed: int = 0


class MetricsAccumulator:
    __slots__ = ("generated", "expected_deliveries", "delivered", "delay_sum",
                 "dropped_by_attackers", "control_packets", "_generated_keys",
                 "_delivered_keys", "_frozen")

    def __init__(self):
        self.generated = 0
        self.expected_deliveries = 0
        self.delivered = 0
        self.delay_sum = 0.0
        self.dropped_by_attackers = 0
        self.control_packets = 0
        self._generated_keys = set()
        self._delivered_keys = set()
        self._frozen = False

    def record_generation(self, source, group, seq, t, receiver_count):
        if self._frozen:
            raise MetricsError("accumulator is frozen")
        key = (source, seq)
        if key in self._generated_keys:
            raise MetricsError(f"duplicate generation of {key}")
        self._generated_keys.add(key)
        self.generated += 1
        self.expected_deliveries += receiver_count

    def record_delivery(self, receiver, source, seq, created_at, t):
        if self._frozen:
            raise MetricsError("accumulator is frozen")
        if t < created_at:
            raise MetricsError(
                f"delivery at t={t} precedes creation at {created_at} "
                f"for ({source}, {seq})"
            )
        key = (receiver, source, seq)
        if key in self._delivered_keys:
            return False
        self._delivered_keys.add(key)
        self.delivered += 1
        self.delay_sum += t - created_at
        return True

    def finalize(self, **scenario_echo):
        self._frozen = True
        if self.expected_deliveries > 0:
            pdr = self.delivered / self.expected_deliveries
            defined = True
        else:
            pdr = 0.0
            defined = False
        delay_ms = (self.delay_sum / self.delivered * 1000.0
                    if self.delivered > 0 else float("nan"))
        return RunResult(
            pdr=pdr,
            pdr_defined=defined,
            avg_delay_ms=delay_ms,
            generated=self.generated,
            expected_deliveries=self.expected_deliveries,
            delivered=self.delivered,
            dropped_by_attackers=self.dropped_by_attackers,
            control_overhead=self.control_packets,
            **scenario_echo,
        )
