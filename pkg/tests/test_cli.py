import json
import logging
import pytest

from src.cli.main import run
from src.cli.render import render_figure, render_svg
from src.cli.report import error_report, fraction_str, status_for
from src.triangulation.triangulation import make_triangulation
from src.utils.errors import Infeasible, InvalidInput, InvariantViolation, PolygonMismatch, ResourceLimit, TooManyLayers
from src.utils.models import RunReport


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text('{"vertices": [[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]}')
    return str(path)


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate_command(capsys, pentagon_file):
    """Test the validate command."""
    code = run(["validate", pentagon_file])
    report = _report(capsys)

    assert code == 0
    assert report["status"] == "ok"
    assert report["instance"]["n"] == 5
    assert report["instance"]["convex"] is True
    assert report["instance"]["cocircular"] is False


def test_validate_missing_file(capsys, tmp_path):
    """Test the validate command on a missing file."""
    code = run(["validate", str(tmp_path / "missing.json")])
    report = _report(capsys)

    assert code == 3
    assert report["status"] == "invalid"


def test_bundled_instance_fallback(capsys, tmp_path, monkeypatch):
    """Test that a bare file name resolves against the bundled instances."""
    monkeypatch.chdir(tmp_path)
    code = run(["validate", "pentagon.json"])
    report = _report(capsys)

    assert code == 0
    assert report["instance"]["n"] == 5


def test_usage_error(capsys):
    """Test that an unknown subcommand is reported as invalid input."""
    code = run(["triangulate"])
    report = _report(capsys)

    assert code == 3
    assert report["command"] == "usage"


def test_enumerate_command(capsys, pentagon_file):
    """Test the enumerate command and its limit."""
    assert run(["enumerate", pentagon_file]) == 0
    assert _report(capsys)["solution"]["count"] == 5

    assert run(["enumerate", pentagon_file, "--limit", "3"]) == 4
    assert _report(capsys)["status"] == "resource-limit"


def test_mwt_command(capsys, pentagon_file):
    """Test the mwt command."""
    code = run(["mwt", pentagon_file, "--measure", "const0", "--k", "2"])
    report = _report(capsys)

    assert code == 0
    assert report["solution"]["count"] == 2
    assert report["solution"]["triangulations"][0] == [[0, 2], [0, 3]]


def test_bct_command(capsys, tmp_path, pentagon_file):
    """Test the bct command with explicit measure tables."""
    weight = tmp_path / "weight.json"
    weight.write_text('{"atoms": {"0,2": 1, "0,3": 2, "1,3": 3, "1,4": 4, "2,4": 5}}')
    quality = tmp_path / "quality.json"
    quality.write_text('{"atoms": {"0,2": 5, "0,3": 1, "1,3": 1, "1,4": 2, "2,4": 0}}')

    code = run([
        "bct", pentagon_file, "--weight", f"table:{weight}", "--quality", f"table:{quality}",
        "--bound", "3", "--k", "2",
    ])
    report = _report(capsys)

    assert code == 0
    assert report["solution"]["weight_values"] == [5, 7]
    assert report["solution"]["optimum"] == 5
    assert report["certificate"]["method"] == "exact"


def test_sum_dnt_command(capsys, pentagon_file):
    """Test the sum-dnt command."""
    code = run(["sum-dnt", pentagon_file, "--k", "3"])
    report = _report(capsys)

    assert code == 0
    assert report["solution"]["sum_sd"] == 10
    assert report["certificate"]["method"] == "optimal-quality"


def test_sum_dnt_infeasible(capsys, pentagon_file):
    """Test that an infeasible sum-dnt run reports what it found."""
    code = run(["sum-dnt", pentagon_file, "--k", "6"])
    report = _report(capsys)

    assert code == 2
    assert report["status"] == "infeasible"
    assert report["solution"]["count"] == 5


def test_sum_dnt_exact_oracle(capsys, pentagon_file):
    """Test the --exact-oracle flag."""
    assert run(["sum-dnt", pentagon_file, "--k", "2", "--exact-oracle"]) == 0
    report = _report(capsys)

    assert report["certificate"]["method"] == "oracle"
    assert report["solution"]["sum_sd"] == 4


def test_min_dt_command(capsys, pentagon_file):
    """Test the min-dt command."""
    assert run(["min-dt", pentagon_file, "--k", "3"]) == 0
    report = _report(capsys)

    assert report["solution"]["min_sd"] == 2
    assert report["certificate"]["r_used"] == 1
    assert report["certificate"]["beta"] == "1/2"


def test_gen_command(capsys, tmp_path):
    """Test the gen command."""
    out = tmp_path / "kites.json"
    table = tmp_path / "excess.json"
    code = run(["gen", "kites", "--values", "1", "2", "--out", str(out), "--measure-out", str(table)])
    report = _report(capsys)

    assert code == 0
    assert report["instance"]["n"] == 9
    assert json.loads(out.read_text())["vertices"][0] == [-20, 0]
    assert json.loads(table.read_text())["name"] == "kite-excess"


def test_render_command(capsys, tmp_path, pentagon_file):
    """Test the render command."""
    tri = tmp_path / "tri.json"
    tri.write_text("[[[0, 2], [0, 3]], [[1, 3], [1, 4]]]")
    out = tmp_path / "pentagon.svg"

    assert run(["render", pentagon_file, "--tri", str(tri), "--out", str(out)]) == 0
    assert _report(capsys)["solution"]["count"] == 2

    svg = out.read_text()
    assert svg.startswith("<?xml")
    assert 'id="boundary"' in svg
    assert 'id="layer-0"' in svg
    assert 'id="layer-1"' in svg
    assert 'id="layer-2"' not in svg


def test_text_format(capsys, pentagon_file):
    """Test the text report format."""
    assert run(["--format", "text", "validate", pentagon_file]) == 0
    out = capsys.readouterr().out

    assert "validate" in out
    assert "vertices" in out


def test_batch(capsys, tmp_path):
    """Test batch runs over a directory of polygons."""
    (tmp_path / "a.json").write_text('{"vertices": [[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]}')
    (tmp_path / "b.json").write_text('{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}')

    code = run(["--batch", str(tmp_path), "min-dt", "--k", "2"])
    reports = _report(capsys)

    assert code == 0
    assert [r["solution"]["min_sd"] for r in reports] == [4, 2]


def test_batch_exit_code_is_worst(capsys, tmp_path):
    """Test that a batch returns the largest exit code."""
    (tmp_path / "a.json").write_text('{"vertices": [[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]}')
    (tmp_path / "b.json").write_text('{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}')

    # The square has only two triangulations
    assert run(["--batch", str(tmp_path), "min-dt", "--k", "3"]) == 2
    statuses = [r["status"] for r in _report(capsys)]
    assert statuses == ["ok", "infeasible"]


def test_render_svg_errors(pentagon, square, pentagon_fans):
    """Test the render_svg parameter checks."""
    with pytest.raises(TooManyLayers):
        render_svg(pentagon, [pentagon_fans[0]] * 9)

    with pytest.raises(PolygonMismatch):
        render_svg(square, [pentagon_fans[0]])

    assert 'id="layer-0"' in render_svg(square, [make_triangulation(square, [(0, 2)])])


def test_render_figure(square):
    """Test the render_figure layers."""
    fig = render_figure(square, [make_triangulation(square, [(0, 2)]), make_triangulation(square, [(1, 3)])])
    ax = fig.axes[0]

    assert [c.get_gid() for c in ax.collections] == ["boundary", "layer-0", "layer-1"]
    assert len(ax.collections[0].get_segments()) == 4
    assert len(ax.collections[1].get_segments()) == 1
    assert ax.get_xlim() == pytest.approx((-0.05, 1.05))


def test_status_for():
    """Test the status_for function."""
    assert status_for(Infeasible(1, 2)) == ("infeasible", 2)
    assert status_for(InvalidInput("bad")) == ("invalid", 3)
    assert status_for(ResourceLimit(10, 5)) == ("resource-limit", 4)
    assert status_for(InvariantViolation("broken")) == ("internal-error", 5)
    assert status_for(RuntimeError("boom")) == ("internal-error", 5)


def test_error_report():
    """Test the error_report function."""
    report = error_report("bct", ["bct"], Infeasible(1, 3))

    assert report.exit_code == 2
    assert "less than 3" in report.message
    assert fraction_str(0.5) == "1/2"


def test_run_report_json_round_trip(capsys, pentagon_file):
    """Test that a printed report parses back into an equal RunReport."""
    assert run(["sum-dnt", pentagon_file, "--k", "3"]) == 0
    report = RunReport.model_validate_json(capsys.readouterr().out)

    assert RunReport.model_validate_json(report.model_dump_json()) == report
    assert report.certificate.beta == "1/2"

    assert run(["sum-dnt", pentagon_file, "--k", "6"]) == 2
    report = RunReport.model_validate_json(capsys.readouterr().out)
    assert RunReport.model_validate_json(report.model_dump_json()) == report


def test_error_report_is_logged(caplog):
    """Test that error_report logs the status it assigns."""
    with caplog.at_level(logging.DEBUG, logger="src.cli.report"):
        error_report("min-dt", ["min-dt"], ResourceLimit(10, 5))

    assert "min-dt: resource-limit report, exit code 4" in caplog.text
