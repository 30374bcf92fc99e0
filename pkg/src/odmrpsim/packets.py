"""Wire message types: JOIN REQUEST, JOIN REPLY, and data packets.

Sizes are metadata only (the channel model does not serialize anything).
JoinReply entries carry the sequence number of the JOIN REQUEST round they
answer, so every node can suppress duplicate reply processing per
(source, seq) and reply propagation can never loop.
"""

from dataclasses import dataclass, field


@dataclass(slots=True)
class JoinRequest:
    source: int
    group: int
    seq: int
    prev_hop: int
    hop_count: int = 0
    size: int = 32


@dataclass(slots=True)
class JoinReply:
    group: int
    origin: int
    # entries: (source, next_hop, jreq_seq)
    entries: list = field(default_factory=list)
    size: int = 32


@dataclass(slots=True)
class DataPacket:
    source: int
    group: int
    seq: int
    created_at: float
    size: int = 512
