import math

import pytest

from odmrpsim.engine import Engine, EventKind
from odmrpsim.mobility import MobilityConfig, RandomWaypoint
from odmrpsim.radio import Radio, RadioConfig, disk_neighbors
from odmrpsim.rng import RandomSource


def make_radio(positions, rcfg=None, v_max=0.0, seed=1):
    eng = Engine()
    deliveries = []
    eng.register(EventKind.PACKET_DELIVERY,
                 lambda payload, t: deliveries.append((t, payload)))
    rng = RandomSource(seed)
    mob = RandomWaypoint(MobilityConfig(1000.0, 1000.0, 0.0, v_max, 0.0),
                         positions, rng)
    radio = Radio(rcfg or RadioConfig(), mob, eng, rng)
    return radio, eng, deliveries


def test_out_of_range_not_reached():
    radio, eng, dlv = make_radio([(0.0, 0.0), (251.0, 0.0)])
    assert radio.broadcast(0, "pkt", 0.0) == 0
    eng.run_until(1.0)
    assert dlv == []


def test_boundary_is_inclusive():
    radio, eng, dlv = make_radio([(0.0, 0.0), (250.0, 0.0)])
    assert radio.broadcast(0, "pkt", 0.0) == 1
    eng.run_until(1.0)
    assert len(dlv) == 1 and dlv[0][1] == (1, "pkt")


def test_each_neighbor_delivered_once():
    pos = [(0.0, 0.0), (100.0, 0.0), (0.0, 100.0), (600.0, 600.0)]
    radio, eng, dlv = make_radio(pos)
    assert radio.broadcast(0, "pkt", 0.0) == 2
    eng.run_until(1.0)
    assert sorted(nid for _, (nid, _) in dlv) == [1, 2]


def test_recipients_match_distance_oracle():
    rng = RandomSource(77)
    pos = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(40)]
    radio, eng, dlv = make_radio(pos)
    for i in range(40):
        assert sorted(radio.neighbors(i, 0.0)) == disk_neighbors(pos, i, 250.0)


def test_neighbor_symmetry():
    rng = RandomSource(13)
    pos = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(30)]
    radio, _, _ = make_radio(pos)
    for i in range(30):
        for j in radio.neighbors(i, 0.0):
            assert i in radio.neighbors(j, 0.0)


def test_delivery_time_window():
    cfg = RadioConfig(per_hop_latency=0.002, jitter=0.001)
    radio, eng, dlv = make_radio([(0.0, 0.0)] + [(50.0 + i, 0.0) for i in range(20)],
                                 rcfg=cfg)
    radio.broadcast(0, "pkt", 10.0, extra_delay=0.005)
    eng.run_until(11.0)
    assert len(dlv) == 20
    for t, _ in dlv:
        assert 10.0 + 0.005 + 0.002 <= t < 10.0 + 0.005 + 0.002 + 0.001


def test_zero_jitter_is_exact():
    cfg = RadioConfig(per_hop_latency=0.002, jitter=0.0)
    radio, eng, dlv = make_radio([(0.0, 0.0), (10.0, 0.0)], rcfg=cfg)
    radio.broadcast(0, "pkt", 1.0)
    eng.run_until(2.0)
    assert dlv[0][0] == 1.002


def test_zero_loss_conserves_count():
    rng = RandomSource(5)
    pos = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(30)]
    radio, eng, dlv = make_radio(pos)
    n = radio.broadcast(4, "pkt", 0.0)
    assert n == len(radio.neighbors(4, 0.0))
    eng.run_until(1.0)
    assert len(dlv) == n


def test_total_loss_delivers_nothing():
    cfg = RadioConfig(loss_prob=1.0)
    radio, eng, dlv = make_radio([(0.0, 0.0), (10.0, 0.0), (20.0, 0.0)], rcfg=cfg)
    assert radio.broadcast(0, "pkt", 0.0) == 0
    eng.run_until(1.0)
    assert dlv == []


def test_partial_loss_rate():
    cfg = RadioConfig(loss_prob=0.3)
    pos = [(0.0, 0.0)] + [(50.0, 0.0)] * 50
    radio, eng, dlv = make_radio(pos, rcfg=cfg)
    total = 0
    for k in range(200):
        total += radio.broadcast(0, "pkt", float(k))
    # 10000 Bernoulli(0.7) trials; 3 sigma is about 137
    assert abs(total - 7000) <= 150


def test_static_precompute_matches_dynamic():
    rng = RandomSource(21)
    pos = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(25)]
    static, _, _ = make_radio(pos, v_max=0.0)
    moving, _, _ = make_radio(pos, v_max=5.0)
    assert static._static_nbrs is not None
    assert moving._static_nbrs is None
    for i in range(25):
        assert static.neighbors(i, 0.0) == moving.neighbors(i, 0.0)


def test_config_validation():
    for bad in (RadioConfig(range=0.0), RadioConfig(per_hop_latency=0.0),
                RadioConfig(jitter=-0.1), RadioConfig(loss_prob=1.5)):
        with pytest.raises(ValueError):
            bad.validate()
