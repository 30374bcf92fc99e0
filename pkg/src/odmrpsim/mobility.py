"""Random waypoint mobility, evaluated analytically from waypoint legs.

Each node repeatedly draws a uniform destination inside the area rectangle
and a uniform speed, optionally pausing before departure. Positions are a
pure function of time along the current leg, so there are no per-tick events
and queries are exact. Legs are generated lazily as the query time advances;
each node draws from its own substream, so lazy evaluation order cannot
perturb determinism.

Speed draws use an effective lower bound of max(v_min, 0.1 m/s) whenever
v_max > 0: an exact 0 m/s draw would freeze a node forever (the classic
random-waypoint stuck-node pathology). v_max == 0 yields a static scenario.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

SPEED_FLOOR = 0.1  # m/s, effective minimum when v_max > 0

INF = math.inf


@dataclass
class MobilityConfig:
    area_w: float = 1000.0
    area_h: float = 1000.0
    v_min: float = 0.0
    v_max: float = 50.0
    pause: float = 0.0

    def validate(self):
        if self.area_w <= 0 or self.area_h <= 0:
            raise ValueError(f"area must be positive, got {self.area_w}x{self.area_h}")
        if not 0 <= self.v_min <= self.v_max:
            raise ValueError(f"need 0 <= v_min <= v_max, got [{self.v_min}, {self.v_max}]")
        if self.pause < 0:
            raise ValueError(f"pause must be >= 0, got {self.pause}")


@dataclass
class Leg:
    """One waypoint leg: stationary at `start` until move_at, then linear."""

    start: tuple
    dest: tuple
    speed: float
    depart_at: float  # time the node arrived at `start`
    move_at: float    # depart_at + pause: motion actually begins
    arrive_at: float  # move_at + distance/speed (inf for a static leg)

    def position(self, t):
        if t >= self.arrive_at:
            return self.dest
        if t <= self.move_at:
            return self.start
        f = (t - self.move_at) * self.speed / self._dist()
        x0, y0 = self.start
        x1, y1 = self.dest
        return (x0 + (x1 - x0) * f, y0 + (y1 - y0) * f)

    def _dist(self):
        return math.hypot(self.dest[0] - self.start[0], self.dest[1] - self.start[1])


class RandomWaypoint:
    """Lazy random-waypoint model for a fixed set of nodes."""

    def __init__(self, cfg: MobilityConfig, initial_positions, rng, log_waypoints=False):
        cfg.validate()
        self.cfg = cfg
        self.n = len(initial_positions)
        self.static = cfg.v_max == 0.0
        self._rngs = [rng.substream("mobility", i).raw for i in range(self.n)]
        self._legs = [[] for _ in range(self.n)]
        self.waypoint_log = [] if log_waypoints else None

        for i, (x, y) in enumerate(initial_positions):
            if not (0 <= x <= cfg.area_w and 0 <= y <= cfg.area_h):
                raise ValueError(f"initial position of node {i} outside area: ({x}, {y})")
            self._legs[i].append(self._draw_leg(i, (float(x), float(y)), 0.0))

        # Current-leg mirror arrays for the vectorized query path.
        self._sx = np.array([l[0].start[0] for l in self._legs])
        self._sy = np.array([l[0].start[1] for l in self._legs])
        self._vx = np.zeros(self.n)
        self._vy = np.zeros(self.n)
        self._t0 = np.zeros(self.n)
        self._dur = np.zeros(self.n)
        for i in range(self.n):
            self._sync_arrays(i)
        self._min_arrive = min(l[-1].arrive_at for l in self._legs)
        self._el = np.zeros(self.n)
        self._px = np.zeros(self.n)
        self._py = np.zeros(self.n)

    def _draw_leg(self, i, start, depart_at):
        cfg = self.cfg
        r = self._rngs[i]
        if self.static:
            leg = Leg(start, start, 0.0, depart_at, depart_at, INF)
        else:
            dx = r.random() * cfg.area_w
            dy = r.random() * cfg.area_h
            lo = max(cfg.v_min, SPEED_FLOOR)
            speed = lo + r.random() * (cfg.v_max - lo)
            move_at = depart_at + cfg.pause
            dist = math.hypot(dx - start[0], dy - start[1])
            leg = Leg(start, (dx, dy), speed, depart_at, move_at, move_at + dist / speed)
        if self.waypoint_log is not None:
            self.waypoint_log.append((i, depart_at, leg.dest[0], leg.dest[1], leg.speed))
        return leg

    def _extend(self, i, t):
        legs = self._legs[i]
        while legs[-1].arrive_at < t:
            last = legs[-1]
            legs.append(self._draw_leg(i, last.dest, last.arrive_at))

    def _sync_arrays(self, i):
        leg = self._legs[i][-1]
        self._sx[i], self._sy[i] = leg.start
        self._t0[i] = leg.move_at
        dur = leg.arrive_at - leg.move_at
        self._dur[i] = dur
        if leg.speed > 0 and dur > 0:
            f = leg.speed / leg._dist()
            self._vx[i] = (leg.dest[0] - leg.start[0]) * f
            self._vy[i] = (leg.dest[1] - leg.start[1]) * f
        else:
            self._vx[i] = self._vy[i] = 0.0

    def leg_at(self, i, t):
        """The leg covering time t for node i (extends history as needed)."""
        self._extend(i, t)
        legs = self._legs[i]
        if len(legs) > 1:
            # Last leg whose depart_at <= t.
            k = bisect_right([l.depart_at for l in legs], t) - 1
            return legs[max(k, 0)]
        return legs[0]

    def position_at(self, i, t):
        """Exact (x, y) of node i at any time t >= 0."""
        return self.leg_at(i, t).position(t)

    def positions_at(self, t):
        """Positions of all nodes at time t as (xs, ys) arrays.

        Fast path for the radio; t must be non-decreasing across calls.
        The returned arrays are internal buffers reused by the next call.
        """
        if t > self._min_arrive:
            for i in range(self.n):
                if self._legs[i][-1].arrive_at < t:
                    self._extend(i, t)
                    self._sync_arrays(i)
            self._min_arrive = min(l[-1].arrive_at for l in self._legs)
        el = np.subtract(t, self._t0, out=self._el)
        np.maximum(el, 0.0, out=el)
        np.minimum(el, self._dur, out=el)
        px = np.multiply(self._vx, el, out=self._px)
        px += self._sx
        py = np.multiply(self._vy, el, out=self._py)
        py += self._sy
        return px, py
