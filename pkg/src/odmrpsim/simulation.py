"""One simulation run: wires engine, mobility, radio, nodes and metrics.

A Simulation owns everything it touches; independent instances share no
mutable state, so a sweep can run many of them in parallel processes.
Random draws come from labeled substreams of one master seed (placement,
role assignment, attacker selection, per-node mobility, radio jitter/loss,
per-attacker drop policy), so adding draws in one subsystem never perturbs
the others.
"""

import hashlib
import json

from .adversary import AttackConfig, BlackHole, select_attackers
from .engine import Engine, EventKind
from .metrics import MetricsAccumulator
from .mobility import MobilityConfig, RandomWaypoint
from .node import Node, ProtocolConfig
from .radio import Radio, RadioConfig
from .rng import RandomSource

GROUP = 0  # all evaluated scenarios use a single multicast group


class Trace:
    """Collects {t, seq, kind, node, detail} records; writable as ndjson."""

    def __init__(self):
        self.records = []

    def add(self, t, kind, node, detail):
        self.records.append({
            "t": t, "seq": len(self.records), "kind": kind,
            "node": node, "detail": detail,
        })

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def digest(self):
        h = hashlib.sha256()
        for rec in self.records:
            h.update(json.dumps(rec, sort_keys=True).encode())
        return h.hexdigest()

    def by_kind(self, kind):
        return [r for r in self.records if r["kind"] == kind]


class Simulation:
    def __init__(self, cfg, *, positions=None, sources=None, receivers=None,
                 attackers=None, trace=None, log_waypoints=False):
        cfg.validate()
        self.cfg = cfg
        self.engine = Engine()
        self.rng = RandomSource(cfg.seed)
        self.protocol = ProtocolConfig(
            cfg.jreq_refresh_s, cfg.fg_lifetime_s, cfg.member_lifetime_s,
            cfg.legit_reply_delay_ms / 1000.0)
        self.protocol.validate()
        self.metrics = MetricsAccumulator()
        self.packet_size = cfg.packet_size
        self.warmup = cfg.warmup_s
        self.stale_jrep_entries = 0
        self._trace = trace
        self.tracing = trace is not None

        if positions is None:
            pr = self.rng.substream("placement")
            positions = [(pr.uniform(0.0, cfg.area_w), pr.uniform(0.0, cfg.area_h))
                         for _ in range(cfg.node_count)]
        elif len(positions) != cfg.node_count:
            raise ValueError(
                f"{len(positions)} positions for node_count={cfg.node_count}")

        mob_cfg = MobilityConfig(cfg.area_w, cfg.area_h, cfg.v_min, cfg.v_max,
                                 cfg.pause)
        self.mobility = RandomWaypoint(mob_cfg, positions, self.rng,
                                       log_waypoints=log_waypoints)
        self.radio = Radio(
            RadioConfig(cfg.range, cfg.per_hop_latency_ms / 1000.0,
                        cfg.jitter_ms / 1000.0, cfg.loss_prob),
            self.mobility, self.engine, self.rng)
        self.nodes = [Node(i, self) for i in range(cfg.node_count)]

        if sources is None and receivers is None:
            # One seeded permutation assigns all roles; attacker cells with
            # more attackers only extend the hostile prefix of the remainder.
            perm = self.rng.substream("roles").permutation(cfg.node_count)
            sources = perm[:cfg.senders]
            receivers = perm[cfg.senders:cfg.senders + cfg.receivers]
        elif sources is None or receivers is None:
            raise ValueError("pass both sources and receivers, or neither")
        self.sources = list(sources)
        self.receivers = list(receivers)
        members = set(self.sources) | set(self.receivers)
        if attackers is None:
            eligible = [i for i in range(cfg.node_count) if i not in members]
            attackers = select_attackers(eligible, cfg.attackers,
                                         self.rng.substream("attackers"))
        else:
            attackers = set(attackers)
            overlap = attackers & members
            if overlap:
                raise ValueError(f"attackers overlap group members: {sorted(overlap)}")
        self.attackers = attackers

        self.attack_cfg = AttackConfig(
            cfg.attack_mode, cfg.attack_n, cfg.attack_t_s, cfg.attack_p,
            cfg.attack_target, cfg.forge_replies, len(attackers))
        for a in attackers:
            self.nodes[a].blackhole = BlackHole(self.attack_cfg,
                                                self.rng.substream("attack", a))
        for r in self.receivers:
            self.nodes[r].recv_groups.add(GROUP)

        eng = self.engine
        eng.register(EventKind.PACKET_DELIVERY, self._on_delivery)
        eng.register(EventKind.PERIODIC_JREQ, self._on_periodic_jreq)
        eng.register(EventKind.DATA_GENERATION, self._on_data_generation)
        eng.register(EventKind.FG_EXPIRY_CHECK, self._on_expiry_check)
        eng.register(EventKind.SIM_END, self._on_sim_end)

    # -- event handlers --------------------------------------------------

    def _on_delivery(self, payload, t):
        node_id, pkt = payload
        self.nodes[node_id].receive(pkt, t)

    def _on_periodic_jreq(self, payload, t):
        node_id, group = payload
        node = self.nodes[node_id]
        if group in node.active_src:
            node.originate_jreq(group, t)
            self.engine.schedule(t + self.protocol.jreq_refresh,
                                 EventKind.PERIODIC_JREQ, payload)

    def _on_data_generation(self, payload, t):
        node_id, group = payload
        node = self.nodes[node_id]
        if group in node.active_src:
            node.originate_data(group, t)
            nxt = t + 1.0 / self.cfg.data_rate_pps
            if nxt < self.cfg.duration_s:
                self.engine.schedule(nxt, EventKind.DATA_GENERATION, payload)

    def _on_expiry_check(self, payload, t):
        for node in self.nodes:
            node.expire_soft_state(t)
        nxt = t + self.protocol.fg_lifetime
        if nxt < self.cfg.duration_s:
            self.engine.schedule(nxt, EventKind.FG_EXPIRY_CHECK, None)

    def _on_sim_end(self, payload, t):
        if self.tracing:
            self.trace("sim_end", -1, t)

    # -- services used by nodes -------------------------------------------

    def trace(self, kind, node, t, **detail):
        self._trace.add(t, kind, node, detail)

    def broadcast_control(self, node, pkt, t, extra_delay):
        self.metrics.control_packets += 1
        return self.radio.broadcast(node.nid, pkt, t, extra_delay)

    def broadcast_data(self, node, pkt, t):
        if self.tracing:
            kind = "data_gen" if node.nid == pkt.source else "data_fwd"
            self.trace(kind, node.nid, t, source=pkt.source, seq=pkt.seq)
        return self.radio.broadcast(node.nid, pkt, t)

    def record_generation(self, node, pkt, t):
        # warm-up gating: packets created before warmup_s count for nothing
        if t >= self.warmup:
            self.metrics.record_generation(pkt.source, pkt.group, pkt.seq, t,
                                           self.receiver_count(pkt.group))

    def deliver(self, node, pkt, t):
        if pkt.created_at < self.warmup:
            return
        counted = self.metrics.record_delivery(node.nid, pkt.source, pkt.seq,
                                               pkt.created_at, t)
        if counted and self.tracing:
            self.trace("data_deliver", node.nid, t, source=pkt.source,
                       seq=pkt.seq, delay=t - pkt.created_at)

    def receiver_count(self, group):
        return sum(1 for r in self.receivers
                   if group in self.nodes[r].recv_groups)

    # -- orchestration ------------------------------------------------------

    def start_source(self, node_id, group=GROUP, data=True):
        t = self.engine.now
        self.nodes[node_id].start_source(group, t)
        self.engine.schedule(t + self.protocol.jreq_refresh,
                             EventKind.PERIODIC_JREQ, (node_id, group))
        if data:
            self.engine.schedule(t, EventKind.DATA_GENERATION, (node_id, group))

    def stop_source(self, node_id, group=GROUP):
        self.nodes[node_id].stop_source(group)

    def leave_receiver(self, node_id, group=GROUP):
        self.nodes[node_id].leave_receiver(group)

    def run(self):
        cfg = self.cfg
        self.engine.schedule(cfg.duration_s, EventKind.SIM_END, None)
        self.engine.schedule(self.protocol.fg_lifetime,
                             EventKind.FG_EXPIRY_CHECK, None)
        for s in self.sources:
            self.start_source(s)
        self.engine.run_until(cfg.duration_s)
        return self.finalize()

    def finalize(self):
        cfg = self.cfg
        return self.metrics.finalize(
            node_count=cfg.node_count, senders=len(self.sources),
            receivers=len(self.receivers), attackers=len(self.attackers),
            attack_mode=cfg.attack_mode, max_speed_mps=cfg.v_max,
            duration_s=cfg.duration_s, seed=cfg.seed)
