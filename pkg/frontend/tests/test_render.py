"""Rendering smoke tests over the committed golden CSVs."""
import subprocess
import sys
from pathlib import Path

import matplotlib.image as mpimg
import numpy as np
import pytest

from levylab_figures import FIGURES, RenderError, render, render_all
from levylab_figures.render import expected_files, read_panel_csv

GOLDEN = Path(__file__).resolve().parent.parent / "golden_csv"


@pytest.fixture(scope="module")
def rendered(tmp_path_factory):
    out = tmp_path_factory.mktemp("png")
    paths = render_all(GOLDEN, out)
    return {p.stem: p for p in paths}


def test_all_figures_render(rendered):
    assert set(rendered) == set(FIGURES)
    for path in rendered.values():
        assert path.stat().st_size > 10_000


def test_panels_nonempty_and_distinct(rendered):
    img = mpimg.imread(rendered["fig2"])
    assert img.std() > 0.01  # not a blank canvas
    thirds = np.array_split(img, 3, axis=1)
    assert not np.array_equal(thirds[0], thirds[1])
    assert not np.array_equal(thirds[1], thirds[2])


def test_fig6_heatmap_nonuniform(rendered):
    img = mpimg.imread(rendered["fig6"])
    assert img.std() > 0.01


def test_empty_dir_lists_expected_files(tmp_path):
    with pytest.raises(RenderError) as exc:
        render_all(tmp_path, tmp_path / "out")
    msg = str(exc.value)
    for fig in FIGURES:
        for name in expected_files(fig):
            assert name in msg


def test_malformed_csv_names_path(tmp_path):
    bad = tmp_path / "fig4_a0.5.csv"
    bad.write_text("xi,value\n0.0,not-a-number\n")
    with pytest.raises(RenderError) as exc:
        read_panel_csv(bad, "xi,value")
    assert str(bad) in str(exc.value)


def test_wrong_header_rejected(tmp_path):
    bad = tmp_path / "fig2_a2.csv"
    bad.write_text("x,y\n0.1,0.2\n")
    with pytest.raises(RenderError) as exc:
        read_panel_csv(bad, "s,value")
    assert "header" in str(exc.value)


def test_cli_single_figure(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "levylab_figures.render", "fig4",
         "--csv-dir", str(GOLDEN), "--out", str(tmp_path)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert (tmp_path / "fig4.png").exists()


def test_cli_missing_csv_exits_nonzero(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "levylab_figures.render", "fig5",
         "--csv-dir", str(tmp_path), "--out", str(tmp_path)],
        capture_output=True, text=True)
    assert proc.returncode == 1
    assert "fig5_T1.csv" in proc.stderr
