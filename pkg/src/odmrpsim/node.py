"""Per-node ODMRP state machine.

Each node keeps soft state only: a bounded duplicate-detection cache, a
reverse-path routing table learned from JOIN REQUEST floods, a member table
(receivers only), and a per-group forwarding-group flag with a lifetime.
Nothing is ever explicitly torn down; entries expire by timestamp, so a
stopped source simply lets the mesh decay.
"""

from collections import deque
from dataclasses import dataclass

from .packets import DataPacket, JoinReply, JoinRequest

CACHE_LIMIT = 1024

# message-cache kind tags
_JREQ = 0
_JREP = 1
_DATA = 2


@dataclass
class ProtocolConfig:
    jreq_refresh: float = 3.0
    fg_lifetime: float = 9.0
    member_lifetime: float = 9.0
    legit_reply_delay: float = 0.001  # table-lookup latency honest nodes pay

    def validate(self):
        if not self.fg_lifetime > self.jreq_refresh > 0:
            raise ValueError(
                f"need fg_lifetime > jreq_refresh > 0, got "
                f"{self.fg_lifetime} / {self.jreq_refresh}"
            )
        if self.member_lifetime <= 0:
            raise ValueError(f"member_lifetime must be > 0, got {self.member_lifetime}")
        if self.legit_reply_delay < 0:
            raise ValueError(f"legit_reply_delay must be >= 0, got {self.legit_reply_delay}")


class Node:
    __slots__ = (
        "nid", "sim", "cache", "cache_fifo", "routing", "member", "fg",
        "src_groups", "recv_groups", "active_src", "jreq_seq", "data_seq",
        "blackhole",
    )

    def __init__(self, nid, sim):
        self.nid = nid
        self.sim = sim
        self.cache = set()
        self.cache_fifo = deque()
        self.routing = {}      # source -> (upstream neighbor, learned_at)
        self.member = {}       # (group, source) -> (last jreq seq, heard_at)
        self.fg = {}           # group -> fg flag refreshed_at
        self.src_groups = set()
        self.recv_groups = set()
        self.active_src = set()
        self.jreq_seq = {}
        self.data_seq = {}
        self.blackhole = None

    @property
    def is_attacker(self):
        return self.blackhole is not None

    def _cache_add(self, key):
        self.cache.add(key)
        fifo = self.cache_fifo
        fifo.append(key)
        if len(fifo) > CACHE_LIMIT:
            self.cache.discard(fifo.popleft())

    def fg_active(self, group, t):
        at = self.fg.get(group)
        return at is not None and t - at < self.sim.protocol.fg_lifetime

    def receive(self, pkt, t):
        cls = pkt.__class__
        if cls is DataPacket:
            self._on_data(pkt, t)
        elif cls is JoinRequest:
            self._on_join_request(pkt, t)
        else:
            self._on_join_reply(pkt, t)

    # -- control plane -------------------------------------------------

    def _on_join_request(self, jreq, t):
        sim = self.sim
        key = (_JREQ, jreq.source, jreq.seq)
        if key in self.cache:
            return
        self._cache_add(key)
        self.routing[jreq.source] = (jreq.prev_hop, t)
        if sim.tracing:
            sim.trace("jreq_rx", self.nid, t, source=jreq.source, seq=jreq.seq,
                      prev_hop=jreq.prev_hop, hops=jreq.hop_count)

        fwd = JoinRequest(jreq.source, jreq.group, jreq.seq, self.nid,
                          jreq.hop_count + 1, jreq.size)
        sim.broadcast_control(self, fwd, t, 0.0)

        bh = self.blackhole
        if bh is not None and bh.cfg.forge_replies:
            # Claim a route by naming the real previous hop as next hop:
            # the reply races ahead of any honest one because no table
            # lookup delay is paid.
            forged = JoinReply(jreq.group, self.nid,
                               [(jreq.source, jreq.prev_hop, jreq.seq)])
            sim.broadcast_control(self, forged, t, 0.0)
            if sim.tracing:
                sim.trace("jrep_forge", self.nid, t, source=jreq.source, seq=jreq.seq,
                          next_hop=jreq.prev_hop)

        if jreq.group in self.recv_groups:
            self.member[(jreq.group, jreq.source)] = (jreq.seq, t)
            self.originate_join_reply(jreq.group, t)

    def originate_join_reply(self, group, t):
        """Build a reply naming one (source, upstream) entry per fresh source."""
        lifetime = self.sim.protocol.member_lifetime
        entries = []
        for (g, src), (seq, heard_at) in self.member.items():
            if g != group or t - heard_at >= lifetime:
                continue
            up = self.routing.get(src)
            if up is None:
                continue
            entries.append((src, up[0], seq))
        if not entries:
            return
        jrep = JoinReply(group, self.nid, entries)
        self.sim.broadcast_control(self, jrep, t, self.sim.protocol.legit_reply_delay)
        if self.sim.tracing:
            self.sim.trace("jrep_origin", self.nid, t, entries=list(entries))

    def _on_join_reply(self, jrep, t):
        sim = self.sim
        if sim.tracing:
            sim.trace("jrep_rx", self.nid, t, origin=jrep.origin,
                      entries=list(jrep.entries))
        onward = []
        for src, next_hop, seq in jrep.entries:
            if next_hop != self.nid:
                continue
            key = (_JREP, src, seq)
            if key in self.cache:
                continue
            self._cache_add(key)
            self.fg[jrep.group] = t
            if sim.tracing:
                sim.trace("fg_set", self.nid, t, group=jrep.group, source=src, seq=seq)
            if src == self.nid:
                continue  # reply reached the source; this branch is complete
            up = self.routing.get(src)
            if up is None:
                sim.stale_jrep_entries += 1
                if sim.tracing:
                    sim.trace("drop_stale_route", self.nid, t, source=src, seq=seq)
                continue
            onward.append((src, up[0], seq))
        if onward:
            out = JoinReply(jrep.group, self.nid, onward, jrep.size)
            sim.broadcast_control(self, out, t, sim.protocol.legit_reply_delay)

    # -- data plane ----------------------------------------------------

    def _on_data(self, pkt, t):
        sim = self.sim
        if pkt.group in self.recv_groups:
            sim.deliver(self, pkt, t)
        key = (_DATA, pkt.source, pkt.seq)
        if key in self.cache:
            return
        self._cache_add(key)
        if not self.fg_active(pkt.group, t):
            if sim.tracing:
                sim.trace("drop_expired", self.nid, t, source=pkt.source, seq=pkt.seq)
            return
        bh = self.blackhole
        if bh is not None and bh.should_drop(pkt, t):
            sim.metrics.dropped_by_attackers += 1
            if sim.tracing:
                sim.trace("drop_attacker", self.nid, t, source=pkt.source, seq=pkt.seq)
            return
        sim.broadcast_data(self, pkt, t)

    # -- roles ---------------------------------------------------------

    def start_source(self, group, t):
        if group in self.active_src:
            raise ValueError(f"node {self.nid} is already a source for group {group}")
        self.src_groups.add(group)
        self.active_src.add(group)
        self.originate_jreq(group, t)

    def stop_source(self, group):
        self.active_src.discard(group)

    def leave_receiver(self, group):
        self.recv_groups.discard(group)
        for k in [k for k in self.member if k[0] == group]:
            del self.member[k]

    def originate_jreq(self, group, t):
        seq = self.jreq_seq.get(group, 0)
        self.jreq_seq[group] = seq + 1
        self._cache_add((_JREQ, self.nid, seq))
        jreq = JoinRequest(self.nid, group, seq, self.nid, 0)
        self.sim.broadcast_control(self, jreq, t, 0.0)
        if self.sim.tracing:
            self.sim.trace("jreq_origin", self.nid, t, group=group, seq=seq)

    def originate_data(self, group, t):
        seq = self.data_seq.get(group, 0)
        self.data_seq[group] = seq + 1
        self._cache_add((_DATA, self.nid, seq))
        pkt = DataPacket(self.nid, group, seq, t, self.sim.packet_size)
        self.sim.record_generation(self, pkt, t)
        # Origination is unconditional: the forwarding-group rule governs
        # relays only, the source always injects its own data.
        self.sim.broadcast_data(self, pkt, t)

    def expire_soft_state(self, t):
        """Hygiene sweep; lazy timestamp checks make this behavior-neutral."""
        proto = self.sim.protocol
        for g in [g for g, at in self.fg.items() if t - at >= proto.fg_lifetime]:
            del self.fg[g]
        for k in [k for k, (_, at) in self.member.items()
                  if t - at >= proto.member_lifetime]:
            del self.member[k]
