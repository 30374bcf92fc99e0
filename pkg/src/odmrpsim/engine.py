"""Deterministic discrete-event engine.

A single priority queue keyed on (fire_at, seq): ties between simultaneous
events break by insertion order, which makes every run totally ordered and
reproducible. Handlers run strictly sequentially; the clock never moves
backwards as observed from inside a handler.
"""

import heapq
from enum import IntEnum


class SchedulingError(RuntimeError):
    """Raised when an event is scheduled before the current clock."""


class EventKind(IntEnum):
    PACKET_DELIVERY = 0
    PERIODIC_JREQ = 1
    DATA_GENERATION = 2
    FG_EXPIRY_CHECK = 3
    SIM_END = 4


class Engine:
    __slots__ = ("now", "_seq", "_heap", "_handlers")

    def __init__(self):
        self.now = 0.0
        self._seq = 0
        self._heap = []
        self._handlers = {}

    def register(self, kind, handler):
        """Attach `handler(payload, t)` to an event kind."""
        self._handlers[kind] = handler

    def schedule(self, fire_at, kind, payload=None):
        """Queue an event; returns its sequence number (opaque handle)."""
        if fire_at < self.now:
            raise SchedulingError(
                f"cannot schedule {EventKind(kind).name} at t={fire_at} "
                f"while clock is {self.now}"
            )
        seq = self._seq
        self._seq = seq + 1
        heapq.heappush(self._heap, (fire_at, seq, kind, payload))
        return seq

    def run_until(self, end):
        """Process every event with fire_at <= end; leaves clock == end."""
        if end < self.now:
            raise SchedulingError(f"run_until({end}) is before clock {self.now}")
        heap = self._heap
        handlers = self._handlers
        pop = heapq.heappop
        count = 0
        while heap and heap[0][0] <= end:
            fire_at, _seq, kind, payload = pop(heap)
            self.now = fire_at
            handlers[kind](payload, fire_at)
            count += 1
        self.now = end
        return count

    def pending(self):
        return len(self._heap)
