import json

import pytest

from odmrpsim.cli import main
from odmrpsim.harness import CSV_HEADER


SMALL = ("node_count=30\nreceivers=6\nduration_s=30\nwarmup_s=5\nv_max=10\n")


def test_run_prints_summary(tmp_path, capsys):
    scen = tmp_path / "s.cfg"
    scen.write_text(SMALL, encoding="utf-8")
    assert main(["run", str(scen), "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "pdr=" in out and "avg_delay=" in out


def test_run_writes_csv(tmp_path, capsys):
    scen = tmp_path / "s.cfg"
    scen.write_text(SMALL, encoding="utf-8")
    out = tmp_path / "row.csv"
    main(["run", str(scen), "--out", str(out)])
    lines = out.read_text().strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert lines[1].startswith("run,")


def test_set_overrides_scenario(tmp_path, capsys):
    scen = tmp_path / "s.cfg"
    scen.write_text(SMALL, encoding="utf-8")
    main(["run", str(scen), "--set", "attackers=3", "--set", "seed=5"])
    assert "pdr=" in capsys.readouterr().out


def test_bad_key_exits_2(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["run", "--set", "bogus=1"])
    assert e.value.code == 2


def test_sweep_to_file(tmp_path, capsys):
    spec = tmp_path / "sweep.cfg"
    spec.write_text(SMALL + "senders=1\nattackers=0,2\nmax_speed=10\n"
                    "replications=1\n", encoding="utf-8")
    out = tmp_path / "grid.csv"
    assert main(["sweep", str(spec), "--out", str(out), "--parallel", "1"]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3


def test_trace_ndjson(tmp_path, capsys):
    scen = tmp_path / "s.cfg"
    scen.write_text(SMALL, encoding="utf-8")
    out = tmp_path / "t.ndjson"
    main(["trace", str(scen), "--out", str(out)])
    first = json.loads(out.read_text().split("\n")[0])
    assert set(first) == {"t", "seq", "kind", "node", "detail"}
