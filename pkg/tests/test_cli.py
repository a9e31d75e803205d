import io
from pathlib import Path

import pytest

from ultranav.cli import (
    ScenarioError,
    build_parser,
    build_simulation,
    format_scenario,
    main,
    parse_scenario,
    verify_tables,
)
from ultranav.geometry import GroundSegment, Rect
from ultranav.pipeline import TrajectorySegment, segment_ticks
from ultranav.sensing import SensorName

REPO_ROOT = Path(__file__).resolve().parents[1]
SCENARIO_DIR = REPO_ROOT / "scenarios"
GOLDEN_DIR = SCENARIO_DIR / "golden"


class TestParser:
    def test_run_flags(self):
        args = build_parser().parse_args(
            ["run", "walk.scn", "--tick-ms", "30", "--temp", "25", "--temp-cal", "20",
             "--rays", "31", "--out", "trace.csv", "--seed", "3"]
        )
        assert args.command == "run"
        assert args.scenario == "walk.scn"
        assert args.tick_ms == 30.0
        assert args.temp == 25.0 and args.temp_cal == 20.0
        assert args.rays == 31 and args.seed == 3
        assert args.out == "trace.csv"
        assert args.calib is None

    def test_verify_tables_command(self):
        args = build_parser().parse_args(["verify-tables"])
        assert args.command == "verify-tables"


class TestParseScenario:
    def test_obstacle_directive(self):
        s = parse_scenario("OBSTACLE 100 102 0 200\nWALK 100 1\n")
        assert s.obstacles == [Rect(100, 102, 0, 200)]

    def test_ground_directive(self):
        s = parse_scenario("GROUND 500 560 -30\nWALK 100 1\n")
        assert s.ground == [GroundSegment(500, 560, -30)]

    def test_walk_tick_count(self):
        s = parse_scenario("WALK 140 3.0\n")
        assert s.walks == [TrajectorySegment(140.0, 3.0)]
        assert segment_ticks(s.walks[0], 30.0) == 100

    def test_comments_and_blank_lines(self):
        s = parse_scenario("# header\n\nWALK 100 1  # trailing\n")
        assert s.walks == [TrajectorySegment(100.0, 1.0)]

    def test_config_and_sensor(self):
        s = parse_scenario("CONFIG tick_ms 25\nSENSOR chest 140 150\nWALK 100 1\n")
        assert s.config == {"tick_ms": 25.0}
        assert s.sensors == {SensorName.CHEST: (140.0, 150.0)}

    def test_unknown_directive(self):
        with pytest.raises(ScenarioError, match="line 2"):
            parse_scenario("WALK 100 1\nJUMP 3\n")

    def test_unknown_config_key(self):
        with pytest.raises(ScenarioError, match="line 1"):
            parse_scenario("CONFIG warp 9\n")

    def test_inverted_rect_reports_line(self):
        with pytest.raises(ScenarioError, match="line 3"):
            parse_scenario("# c\nWALK 100 1\nOBSTACLE 10 5 0 10\n")

    def test_overlapping_ground_reports_line(self):
        with pytest.raises(ScenarioError, match="line 2"):
            parse_scenario("GROUND 0 50 -10\nGROUND 40 90 -20\nWALK 100 1\n")

    def test_round_trip(self):
        text = (
            "CONFIG tick_ms 25\nCONFIG n_rays 61\nSENSOR knee 55 60\n"
            "OBSTACLE 100 102 0 200\nGROUND 40 90 -20\nWALK 140 3\nWALK -50 0.6\n"
        )
        once = parse_scenario(text)
        again = parse_scenario(format_scenario(once))
        assert once == again


class TestBuildSimulation:
    def test_sensor_override_applies(self):
        s = parse_scenario("SENSOR chest 140 150\nWALK 100 1\n")
        _, config, _, _ = build_simulation(s)
        chest = config.sensor(SensorName.CHEST)
        assert chest.mount_height == 140.0

    def test_missing_walk_rejected(self):
        with pytest.raises(ScenarioError, match="WALK"):
            build_simulation(parse_scenario("OBSTACLE 100 102 0 200\n"))


class TestRunCommand:
    def test_empty_scene_trace(self, tmp_path, capsys):
        scn = tmp_path / "flat.scn"
        scn.write_text("WALK 140 0.3\n")
        assert main(["run", str(scn)]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0].startswith("tick,t_ms,user_x")
        assert len(lines) == 11
        assert all(line.endswith("MoveForward") for line in lines[1:])

    def test_tick_ms_column_step(self, tmp_path, capsys):
        scn = tmp_path / "flat.scn"
        scn.write_text("WALK 140 0.3\n")
        main(["run", str(scn)])
        lines = capsys.readouterr().out.strip().splitlines()[1:]
        ts = [float(line.split(",")[1]) for line in lines]
        assert ts == [30.0 * i for i in range(len(ts))]

    def test_out_file_and_exit_codes(self, tmp_path):
        scn = tmp_path / "flat.scn"
        scn.write_text("WALK 140 0.3\n")
        out = tmp_path / "trace.csv"
        assert main(["run", str(scn), "--out", str(out)]) == 0
        assert out.read_text().startswith("tick,t_ms")

    def test_parse_failure_exit_code(self, tmp_path, capsys):
        scn = tmp_path / "bad.scn"
        scn.write_text("JUMP 3\n")
        assert main(["run", str(scn)]) == 2
        assert "line 1" in capsys.readouterr().err

    def test_missing_file_exit_code(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "nope.scn")]) == 2
        assert "error" in capsys.readouterr().err

    def test_calibration_flag(self, tmp_path, capsys):
        scn = tmp_path / "wall.scn"
        scn.write_text("OBSTACLE 100 102 0 200\nWALK 0 0.06\n")
        calib = tmp_path / "cal.txt"
        calib.write_text("10 12\n100 102\n300 302\n")
        main(["run", str(scn), "--calib", str(calib)])
        lines = capsys.readouterr().out.strip().splitlines()[1:]
        d_chest = float(lines[0].split(",")[3])
        assert d_chest == pytest.approx(102.0, abs=0.05)


class TestVerifyTables:
    def test_passes_with_default_config(self):
        out = io.StringIO()
        assert verify_tables(out) is True
        report = out.getvalue()
        assert "chest: 150.0 -> level 1, 150.5 -> level 0" in report
        assert "depth: 40.0 -> level 2, 40.5 -> level 3" in report
        assert "verify-tables: PASS" in report

    def test_cli_exit_code(self, capsys):
        assert main(["verify-tables"]) == 0
        assert "PASS" in capsys.readouterr().out


class TestGoldenTraces:
    @pytest.mark.parametrize(
        "name", ["flat_walk", "wall_approach", "upstairs", "pothole_grades", "waist_probe"]
    )
    def test_bundled_scenario_matches_golden(self, name, tmp_path):
        scn = SCENARIO_DIR / f"{name}.scn"
        golden = GOLDEN_DIR / f"{name}.trace.csv"
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["run", str(scn), "--out", str(out1)]) == 0
        assert main(["run", str(scn), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_bytes() == golden.read_bytes()
