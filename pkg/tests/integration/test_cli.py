import json

import pytest
from typer.testing import CliRunner

from cli.main import app

runner = CliRunner()


@pytest.fixture
def curve_file(temp_workspace, ellipse_curve_json):
    path = temp_workspace / "ellipse.json"
    path.write_text(ellipse_curve_json)
    return path


@pytest.fixture
def factors_file(temp_workspace, ellipse_factors_json):
    path = temp_workspace / "factors.json"
    path.write_text(ellipse_factors_json)
    return path


@pytest.fixture
def ladder_file(temp_workspace, factors_file):
    out = temp_workspace / "ladder.json"
    result = runner.invoke(
        app,
        ["synthesize", str(factors_file), "--l=-9/5i-(18/35)i e", "--out", str(out)],
    )
    assert result.exit_code == 0
    return out


def _read(path):
    return json.loads(path.read_text())


def test_factor_curve(curve_file, temp_workspace):
    """Factoring the ellipse needs R = t^2 + 1 without the drawing multiplier"""
    out = temp_workspace / "factors.json"
    result = runner.invoke(app, ["factor", str(curve_file), "--out", str(out)])
    assert result.exit_code == 0
    doc = _read(out)
    assert doc["R"] == "t^2+1"
    assert len(doc["factors"]) == 4


def test_factor_with_drawing_multiplier(curve_file, temp_workspace):
    out = temp_workspace / "factors.json"
    result = runner.invoke(app, ["factor", str(curve_file), "--drawing", "-o", str(out)])
    assert result.exit_code == 0
    doc = _read(out)
    assert doc["R"] == "1"
    assert doc["C"] == "t-1i"
    assert len(doc["factors"]) == 3


def test_factor_exit_codes(temp_workspace):
    unbounded = temp_workspace / "unbounded.txt"
    unbounded.write_text("(t^2-1)+(i)e")
    assert runner.invoke(app, ["factor", str(unbounded)]).exit_code == 3

    broken = temp_workspace / "broken.json"
    broken.write_text("{not json")
    assert runner.invoke(app, ["factor", str(broken)]).exit_code == 2

    missing = temp_workspace / "missing.json"
    assert runner.invoke(app, ["factor", str(missing)]).exit_code == 2


def test_synthesize_weak_chain(curve_file, temp_workspace):
    out = temp_workspace / "chain.json"
    result = runner.invoke(
        app, ["synthesize", str(curve_file), "--weak", "--drawing", "--out", str(out)]
    )
    assert result.exit_code == 0
    doc = _read(out)
    assert doc["kind"] == "open_chain"
    assert doc["n_links"] == 4
    assert "layers" not in doc


def test_synthesize_ladder_from_factors(ladder_file):
    doc = _read(ladder_file)
    assert doc["kind"] == "ladder"
    assert (doc["n_links"], len(doc["joints"])) == (8, 10)
    assert doc["layers"]["n_layers"] == 13
    assert doc["meta"]["ladder"]["l"][1] == "0-9/5i+(0+9/20i)e"


def test_synthesize_rejects_immobile_l(factors_file):
    result = runner.invoke(app, ["synthesize", str(factors_file), "--l", "i"])
    assert result.exit_code == 5


def test_render_frames_and_trace(ladder_file, temp_workspace):
    frames = temp_workspace / "frames"
    result = runner.invoke(
        app,
        ["render", str(ladder_file), "--t=-1", "--t=0", "--t=1/2", "--t=inf", "-o", str(frames)],
    )
    assert result.exit_code == 0
    assert sorted(p.name for p in frames.glob("*.svg")) == [
        f"frame_{i:02d}.svg" for i in range(4)
    ]

    trace_dir = temp_workspace / "trace"
    result = runner.invoke(app, ["render", str(ladder_file), "--trace", "-o", str(trace_dir)])
    assert result.exit_code == 0
    assert (trace_dir / "trace.svg").exists()


def test_render_without_parameters_draws_the_trace(ladder_file, temp_workspace):
    out = temp_workspace / "only_trace"
    result = runner.invoke(app, ["render", str(ladder_file), "-o", str(out)])
    assert result.exit_code == 0
    assert [p.name for p in out.glob("*.svg")] == ["trace.svg"]


def test_render_at_negative_infinity(ladder_file, temp_workspace):
    out = temp_workspace / "far"
    result = runner.invoke(app, ["render", str(ladder_file), "--t=-inf", "-o", str(out)])
    assert result.exit_code == 0
    assert (out / "frame_00.svg").exists()


def test_collide_with_ordering(ladder_file, temp_workspace):
    out = temp_workspace / "collisions.json"
    result = runner.invoke(
        app,
        ["collide", str(ladder_file), "--ordering", "5,1,6,2,7,8,4,3", "--out", str(out)],
    )
    assert result.exit_code == 0
    report = _read(out)
    assert report["schema"] == "linkforge/collisions@1"
    assert (report["finite"], report["infinite"]) == (0, 2)


def test_collide_rejects_bad_ordering(ladder_file):
    result = runner.invoke(app, ["collide", str(ladder_file), "--ordering", "1,2,3"])
    assert result.exit_code == 2


def test_collide_search(ladder_file, temp_workspace):
    out = temp_workspace / "search.json"
    result = runner.invoke(
        app, ["collide", str(ladder_file), "--search", "--budget", "30", "--out", str(out)]
    )
    assert result.exit_code == 0
    assert sorted(_read(out)["ordering"]) == list(range(1, 9))


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
