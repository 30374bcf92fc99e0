"""Black hole attacker behavior.

An attacker participates in the control plane like any node (it rebroadcasts
JOIN REQUESTs and propagates JOIN REPLYs normally, so route discovery never
deadlocks) but additionally forges a JOIN REPLY the moment it hears a fresh
JOIN REQUEST, and drops data packets it would otherwise relay, according to
a configurable policy.
"""

import math
from dataclasses import dataclass

BULK = "bulk"
EVERY_N = "every_n"
EVERY_T = "every_t"
RANDOM_P = "random_p"
PER_DESTINATION = "per_destination"

ATTACK_MODES = (BULK, EVERY_N, EVERY_T, RANDOM_P, PER_DESTINATION)


class AttackConfigError(ValueError):
    pass


@dataclass
class AttackConfig:
    mode: str = BULK
    n: int = 1            # every_n: drop packets n, 2n, 3n, ...
    t: float = 1.0        # every_t: at most one drop per t-second window
    p: float = 0.5        # random_p: drop probability
    target: int = 0       # per_destination: group or source id to drop
    forge_replies: bool = True
    attacker_count: int = 0

    def validate(self):
        if self.mode not in ATTACK_MODES:
            raise AttackConfigError(f"unknown attack mode {self.mode!r}")
        if self.n < 1:
            raise AttackConfigError(f"attack_n must be >= 1, got {self.n}")
        if self.t <= 0:
            raise AttackConfigError(f"attack_t_s must be > 0, got {self.t}")
        if not 0.0 <= self.p <= 1.0:
            raise AttackConfigError(f"attack_p must be in [0, 1], got {self.p}")
        if self.attacker_count < 0:
            raise AttackConfigError(f"attacker count must be >= 0, got {self.attacker_count}")


class BlackHole:
    """Drop-policy state for one attacker node."""

    __slots__ = ("cfg", "packets_seen", "last_drop_at", "_rng")

    def __init__(self, cfg: AttackConfig, rng):
        cfg.validate()
        self.cfg = cfg
        self.packets_seen = 0
        self.last_drop_at = -math.inf
        self._rng = rng.raw

    def should_drop(self, pkt, t):
        """Decide the fate of a data packet the node would otherwise forward."""
        self.packets_seen += 1
        mode = self.cfg.mode
        if mode == BULK:
            drop = True
        elif mode == EVERY_N:
            drop = self.packets_seen % self.cfg.n == 0
        elif mode == EVERY_T:
            drop = t - self.last_drop_at >= self.cfg.t
        elif mode == RANDOM_P:
            drop = self._rng.random() < self.cfg.p
        else:  # PER_DESTINATION
            drop = pkt.group == self.cfg.target or pkt.source == self.cfg.target
        if drop:
            self.last_drop_at = t
        return drop


def select_attackers(eligible, count, rng):
    """Uniform random subset of the eligible pool, deterministic per seed.

    Selection is a prefix of one seeded permutation, so raising `count`
    only turns additional nodes hostile without reshuffling the rest.
    """
    eligible = list(eligible)
    if count > len(eligible):
        raise AttackConfigError(
            f"attacker_count {count} exceeds eligible pool of {len(eligible)} "
            "(sources and receivers are not eligible)"
        )
    return set(rng.permutation(eligible)[:count])
