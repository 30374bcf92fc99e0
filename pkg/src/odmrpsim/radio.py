"""Idealized broadcast channel: unit-disk connectivity, per-hop latency.

Every transmission reaches exactly the nodes within `range` meters of the
sender at transmit time (inclusive boundary), each after
per_hop_latency + U[0, jitter) seconds, independently lost with loss_prob.
There is no MAC contention or capture model; 802.11 effects are abstracted
into the latency, jitter, and loss knobs.
"""

import math
from dataclasses import dataclass

from .engine import EventKind


@dataclass
class RadioConfig:
    range: float = 250.0
    per_hop_latency: float = 0.002
    jitter: float = 0.001
    loss_prob: float = 0.0

    def validate(self):
        if self.range <= 0:
            raise ValueError(f"range must be > 0, got {self.range}")
        if self.per_hop_latency <= 0:
            raise ValueError(f"per_hop_latency must be > 0, got {self.per_hop_latency}")
        if self.jitter < 0:
            raise ValueError(f"jitter must be >= 0, got {self.jitter}")
        if not 0.0 <= self.loss_prob <= 1.0:
            raise ValueError(f"loss_prob must be in [0, 1], got {self.loss_prob}")


class Radio:
    def __init__(self, cfg: RadioConfig, mobility, engine, rng):
        cfg.validate()
        self.cfg = cfg
        self.mobility = mobility
        self.engine = engine
        self._jitter_rng = rng.substream("radio", "jitter").raw
        self._loss_rng = rng.substream("radio", "loss").raw
        self._static_nbrs = None
        if mobility.static:
            xs, ys = mobility.positions_at(0.0)
            r2 = cfg.range * cfg.range
            n = mobility.n
            self._static_nbrs = []
            for i in range(n):
                dx = xs - xs[i]
                dy = ys - ys[i]
                near = dx * dx + dy * dy <= r2
                near[i] = False
                self._static_nbrs.append(near.nonzero()[0].tolist())

    def neighbors(self, i, t):
        """Node ids within range of node i at time t (i excluded)."""
        if self._static_nbrs is not None:
            return list(self._static_nbrs[i])
        xs, ys = self.mobility.positions_at(t)
        r2 = self.cfg.range * self.cfg.range
        dx = xs - xs[i]
        dy = ys - ys[i]
        near = dx * dx + dy * dy <= r2
        near[i] = False
        return near.nonzero()[0].tolist()

    def broadcast(self, sender, packet, t, extra_delay=0.0):
        """Schedule a delivery to every in-range node; returns the count."""
        recipients = (self._static_nbrs[sender] if self._static_nbrs is not None
                      else self.neighbors(sender, t))
        cfg = self.cfg
        engine = self.engine
        base = t + extra_delay + cfg.per_hop_latency
        jitter = cfg.jitter
        jr = self._jitter_rng.random
        loss = cfg.loss_prob
        lr = self._loss_rng.random
        count = 0
        for j in recipients:
            if loss > 0.0 and lr() < loss:
                continue
            at = base + jitter * jr() if jitter > 0.0 else base
            engine.schedule(at, EventKind.PACKET_DELIVERY, (j, packet))
            count += 1
        return count


def disk_neighbors(positions, i, radius):
    """Brute-force O(n) disk predicate over explicit positions (oracle use)."""
    xi, yi = positions[i]
    out = []
    for j, (x, y) in enumerate(positions):
        if j != i and math.hypot(x - xi, y - yi) <= radius:
            out.append(j)
    return out
