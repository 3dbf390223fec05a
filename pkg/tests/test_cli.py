"""The hyperspace command line interface, run in-process through main()."""

import json
import math

import pytest

from hyperspace import cli
from hyperspace.verify import CaseFailure, SuiteReport


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def seg_docs(tmp_path):
    a = write_json(tmp_path / "a.json", {
        "dim": 2, "set": {"type": "segment", "p": [0.0, 0.0], "q": [1.0, 0.0]}})
    b = write_json(tmp_path / "b.json", {
        "dim": 2, "set": {"type": "segment", "p": [0.0, 1.0], "q": [2.0, 1.0]}})
    return a, b


class TestDist:
    def test_reports_both_directions(self, seg_docs, capsys):
        assert cli.main(["dist", *seg_docs]) == 0
        out = json.loads(capsys.readouterr().out)
        assert set(out) == {"dbar_ab", "dbar_ba", "h", "err"}
        assert out["dbar_ab"] == pytest.approx(1.0, abs=1e-6)
        assert out["dbar_ba"] == pytest.approx(math.sqrt(2.0), abs=1e-6)
        assert out["h"] == max(out["dbar_ab"], out["dbar_ba"])
        assert out["err"] <= 1e-9

    def test_oracle_flag_adds_cross_check(self, seg_docs, capsys):
        assert cli.main(["dist", *seg_docs, "--oracle", "0.01"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["oracle"]["err"] == 0.01
        assert abs(out["oracle"]["value"] - out["h"]) <= 0.01 + out["err"]

    def test_tol_is_honoured(self, seg_docs, capsys):
        assert cli.main(["dist", *seg_docs, "--tol", "1e-6"]) == 0
        assert json.loads(capsys.readouterr().out)["err"] <= 1e-6

    def test_missing_file_exits_2(self, tmp_path, capsys):
        a = write_json(tmp_path / "a.json",
                       {"dim": 1, "set": {"type": "points", "coords": [[0.0]]}})
        assert cli.main(["dist", a, str(tmp_path / "nope.json")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_document_exits_2(self, tmp_path, capsys):
        a = write_json(tmp_path / "a.json", {"dim": 1})
        assert cli.main(["dist", a, a]) == 2
        assert "error:" in capsys.readouterr().err

    def test_dimension_mismatch_exits_2(self, tmp_path, capsys):
        a = write_json(tmp_path / "a.json",
                       {"dim": 1, "set": {"type": "points", "coords": [[0.0]]}})
        b = write_json(tmp_path / "b.json",
                       {"dim": 2, "set": {"type": "points",
                                          "coords": [[0.0, 0.0]]}})
        assert cli.main(["dist", a, b]) == 2


PATH_DOC = {"kind": "point_to_box", "dim": 2, "a": [0.0, 1.0],
            "m": [-5.0, -2.0], "M": [4.0, 3.0]}


class TestPath:
    def test_frame_stream_contents(self, tmp_path, capsys):
        spec = write_json(tmp_path / "p.json", PATH_DOC)
        out = tmp_path / "frames.json"
        assert cli.main(["path", spec, "--frames", "5",
                         "--out", str(out)]) == 0
        stream = json.loads(out.read_text())
        assert stream["header"] == {"dim": 2, "kind": "point_to_box",
                                    "lipschitz": math.sqrt(2.0) * 5.0,
                                    "frames": 5}
        ts = [f["t"] for f in stream["frames"]]
        assert ts[0] == 0.0 and ts[-1] == 1.0
        assert all(t1 < t2 for t1, t2 in zip(ts, ts[1:]))
        node = stream["frames"][2]["set"]
        assert node["type"] == "box"
        assert node["lo"] == [-2.5, -0.5] and node["hi"] == [2.0, 2.0]

    def test_output_ends_with_newline(self, tmp_path):
        spec = write_json(tmp_path / "p.json", PATH_DOC)
        out = tmp_path / "frames.json"
        cli.main(["path", spec, "--frames", "2", "--out", str(out)])
        assert out.read_text().endswith("}\n")

    def test_svg_frames_written(self, tmp_path):
        spec = write_json(tmp_path / "p.json", PATH_DOC)
        out = tmp_path / "frames.json"
        svg_dir = tmp_path / "svg"
        assert cli.main(["path", spec, "--frames", "4", "--out", str(out),
                         "--svg", str(svg_dir)]) == 0
        files = sorted(f.name for f in svg_dir.iterdir())
        assert files == [f"frame_{i:03d}.svg" for i in range(4)]
        body = (svg_dir / "frame_001.svg").read_text()
        assert body.startswith("<svg") and "<rect" in body

    def test_too_few_frames_exits_2(self, tmp_path, capsys):
        spec = write_json(tmp_path / "p.json", PATH_DOC)
        code = cli.main(["path", spec, "--frames", "1",
                         "--out", str(tmp_path / "o.json")])
        assert code == 2
        assert "frames" in capsys.readouterr().err

    def test_svg_requires_dim_two(self, tmp_path, capsys):
        doc = {"kind": "translation", "dim": 1,
               "set": {"type": "points", "coords": [[0.0]]}, "vector": [1.0]}
        spec = write_json(tmp_path / "p.json", doc)
        code = cli.main(["path", spec, "--frames", "3",
                         "--out", str(tmp_path / "o.json"),
                         "--svg", str(tmp_path / "svg")])
        assert code == 2

    def test_junction_mismatch_exits_2(self, tmp_path, capsys):
        doc = {"kind": "concatenation", "paths": [
            {"kind": "translation", "dim": 1,
             "set": {"type": "points", "coords": [[0.0]]}, "vector": [1.0]},
            {"kind": "translation", "dim": 1,
             "set": {"type": "points", "coords": [[5.0]]}, "vector": [1.0]},
        ]}
        spec = write_json(tmp_path / "p.json", doc)
        code = cli.main(["path", spec, "--frames", "3",
                         "--out", str(tmp_path / "o.json")])
        assert code == 2
        assert "do not meet" in capsys.readouterr().err


class TestVerify:
    def test_contraction_suite_exit_0(self, capsys):
        assert cli.main(["verify", "contraction", "--cases", "30"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["suite"] == "contraction"
        assert report["cases"] == 30
        assert report["failures"] == []

    def test_metric_axioms_suite_exit_0(self, capsys):
        assert cli.main(["verify", "metric-axioms", "--cases", "30",
                         "--seed", "3"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["failures"] == []

    def test_all_emits_one_report_per_suite(self, capsys):
        assert cli.main(["verify", "all", "--cases", "8"]) == 0
        reports = json.loads(capsys.readouterr().out)
        assert [r["suite"] for r in reports] == [
            "metric-axioms", "path-modulus", "oracle", "contraction"]

    def test_failures_exit_1(self, capsys, monkeypatch):
        bad = SuiteReport("contraction", 1)
        bad.failures.append(CaseFailure(0, 0, "forced", 2.0, 1.0))
        monkeypatch.setattr(cli.verify, "run_contraction",
                            lambda *a, **k: bad)
        assert cli.main(["verify", "contraction"]) == 1
        report = json.loads(capsys.readouterr().out)
        assert report["failures"][0]["description"] == "forced"

    def test_unknown_suite_is_a_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "everything"])
        assert exc.value.code == 2


def test_missing_command_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
