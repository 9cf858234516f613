import math

import pytest

import wormsim


def test_forward_cycle_defaults():
    out = wormsim.apply_cycle(wormsim.Pose(0, 0, 0), wormsim.CycleKind.FORWARD)
    assert out["net_displacement"] == pytest.approx(10.0)
    assert out["pose"].x == pytest.approx(10.0)
    assert wormsim.pressure_to_extension(55.0) == pytest.approx(20.0)


def test_turn_chamber_follows_inversion():
    calib = wormsim.GaitCalibration()
    assert wormsim.compile_turn(wormsim.Side.LEFT, calib) == wormsim.Side.LEFT
    calib.turn_inverted = False
    assert wormsim.compile_turn(wormsim.Side.LEFT, calib) == wormsim.Side.RIGHT
    phases = wormsim.build_cycle(wormsim.CycleKind.RIGHT, calib)
    assert phases[1]["center_left"] == 55.0 and phases[1]["center_right"] == 0.0


def test_telemetry_frame():
    pkt = wormsim.SensorPacket(1, wormsim.ContactFlags(True, False), wormsim.LightPair(256, 2))
    frame = wormsim.encode(pkt)
    assert frame == bytes([0xAA, 0x01, 0x01, 0x01, 0x00, 0x00, 0x02, 0x00, 0x00, 0xA9])
    assert wormsim.decode(frame) == pkt
    with pytest.raises(ValueError, match="checksum"):
        wormsim.decode(frame[:9] + bytes([0x00]))
    with pytest.raises(ValueError, match="length"):
        wormsim.decode(frame[:9])


def test_controller_avoids_contact_side():
    state, plan = wormsim.decide(wormsim.ControllerState(),
                                 wormsim.SensorPacket(0, wormsim.ContactFlags(True, False)))
    assert plan == "RRF"
    assert state.mode == "avoid"
    _, plan = wormsim.decide(state, wormsim.SensorPacket(0, light=wormsim.LightPair(900, 300)))
    assert plan == "LF"


def test_scenario_round_trip_and_generation():
    s = wormsim.generate_scenario(42, 12)
    assert len(s.pegs) == 12
    assert wormsim.load_scenario(wormsim.save_scenario(s)) == s
    with pytest.raises(ValueError, match="over-dense"):
        wormsim.generate_scenario(1, 300)


def test_straight_run():
    s = wormsim.default_template()
    r = wormsim.run(s)
    assert r.outcome == "reached"
    assert r.iterations_used == 100
    mean, std = r.progress
    assert mean == pytest.approx(10.0)
    assert std == pytest.approx(0.0)
    assert set(r.cycles) == {"F"}
    assert r.csv().startswith("iteration,cycle_kind,x_mm")


def test_canonical_run_is_deterministic():
    s = wormsim.canonical_scenario("far-wall")
    sim = wormsim.SimConfig()
    sim.seed = 5
    a = wormsim.run(s, sim=sim)
    b = wormsim.run(s, sim=sim)
    assert a.outcome == "reached"
    assert a.csv() == b.csv()


def test_progress_stats_and_sweep():
    assert wormsim.progress_stats([110, 100, 90]) == pytest.approx((10.0, 0.0))
    rows, best = wormsim.sweep("center_pressure", 30, 70, 10)
    assert best == 70
    assert [v for v, _ in rows] == [30, 40, 50, 60, 70]
    assert all(b[1] > a[1] for a, b in zip(rows, rows[1:]))


def test_cli_entry_point(tmp_path):
    code, out, err = wormsim.cli(["canonical", "--name", "top-right", "--out", str(tmp_path / "s.json")])
    assert code == 0, err
    code, out, err = wormsim.cli(["run", "--scenario", str(tmp_path / "s.json"), "--seed", "1",
                                  "--out", str(tmp_path / "t.csv")])
    assert code == 0, err
    assert '"outcome":"reached"' in out
    code, _, _ = wormsim.cli(["run", "--scenario", str(tmp_path / "nope.json"), "--seed", "1",
                              "--out", str(tmp_path / "t.csv")])
    assert code == 2
