import json

import numpy as np
import pytest

from mammoseg.cli import main
from mammoseg.pgm import pgm_to_mask, write_pgm
from conftest import disk_mask, noisy_phantom


@pytest.fixture
def phantom_file(tmp_path):
    path = tmp_path / "phantom.pgm"
    path.write_bytes(write_pgm(noisy_phantom()))
    return path


def test_run_with_calibration_classifies(phantom_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main([
        "run", str(phantom_file), "--out-dir", str(out_dir),
        "--cm-per-px", "0.02", "--fixed-timestamp", "2026-01-01T00:00:00Z",
    ])
    assert code == 0
    summary = capsys.readouterr().out.strip()
    assert "phantom.pgm" in summary
    assert "diameter_cm=1.2" in summary
    assert "type=malignant" in summary
    assert "stage=low-medium" in summary

    report = json.loads((out_dir / "phantom.report.json").read_text())
    assert report["tumor_type"] == "malignant"
    assert report["t_category"] == "T1c"
    assert abs(report["diameter_cm"] - 1.20) <= 0.048

    mask = pgm_to_mask((out_dir / "phantom.mask.pgm").read_bytes())
    assert 2500 <= mask.sum() <= 3200  # roughly the r=30 disk

    hist = json.loads((out_dir / "phantom.histogram.json").read_text())
    assert len(hist) == 256 and sum(hist) == 128 * 128


def test_run_without_calibration_pixels_only(phantom_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main(["run", str(phantom_file), "--out-dir", str(out_dir)])
    assert code == 0
    out = capsys.readouterr().out
    assert "diameter_px=" in out and "type=" not in out
    assert not (out_dir / "phantom.report.json").exists()


def test_classify_without_calibration_usage_error(phantom_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main(["run", str(phantom_file), "--classify", "--out-dir", str(out_dir)])
    assert code == 2
    assert not (out_dir / "phantom.report.json").exists()
    assert "--cm-per-px" in capsys.readouterr().err


def test_directory_with_corrupt_image_partial_failure(tmp_path, capsys):
    src = tmp_path / "imgs"
    src.mkdir()
    (src / "a.pgm").write_bytes(write_pgm(noisy_phantom(seed=1)))
    (src / "b.pgm").write_bytes(b"P5 garbage")
    (src / "c.pgm").write_bytes(write_pgm(noisy_phantom(seed=2)))
    out_dir = tmp_path / "out"
    code = main(["run", str(src), "--out-dir", str(out_dir), "--cm-per-px", "0.02",
                 "--fixed-timestamp", "2026-01-01T00:00:00Z"])
    assert code == 1
    assert (out_dir / "a.report.json").exists()
    assert (out_dir / "c.report.json").exists()
    assert not (out_dir / "b.report.json").exists()
    captured = capsys.readouterr()
    assert captured.out.count("diameter_cm=") == 2
    assert "b.pgm" in captured.err


def test_artifacts_byte_identical_across_runs(phantom_file, tmp_path):
    outs = []
    for name in ("o1", "o2"):
        out_dir = tmp_path / name
        code = main([
            "run", str(phantom_file), "--out-dir", str(out_dir),
            "--cm-per-px", "0.02", "--fixed-timestamp", "2026-05-05T05:05:05Z",
        ])
        assert code == 0
        outs.append({
            p.name: p.read_bytes() for p in sorted(out_dir.iterdir())
        })
    assert outs[0] == outs[1]


def test_unknown_pipeline_step_usage_error(phantom_file, tmp_path):
    code = main(["run", str(phantom_file), "--pipeline", "median,sparkle",
                 "--out-dir", str(tmp_path / "out")])
    assert code == 2


def test_bad_flags_exit_2(phantom_file, tmp_path):
    assert main(["run", str(phantom_file), "--median-window", "4",
                 "--out-dir", str(tmp_path / "o")]) == 2
    assert main(["run", str(phantom_file), "--cm-per-px", "-3",
                 "--out-dir", str(tmp_path / "o")]) == 2
    assert main(["run", str(phantom_file), "--fixed-timestamp", "yesterday",
                 "--out-dir", str(tmp_path / "o")]) == 2


def test_pipeline_override_runs_requested_steps(tmp_path, capsys):
    img = np.full((64, 64), 20, dtype=np.uint8)
    img[disk_mask((64, 64), 32, 32, 10)] = 220
    src = tmp_path / "disk.pgm"
    src.write_bytes(write_pgm(img))
    out_dir = tmp_path / "out"
    code = main(["run", str(src), "--pipeline", "otsu,components",
                 "--out-dir", str(out_dir), "--cm-per-px", "0.05",
                 "--fixed-timestamp", "2026-01-01T00:00:00Z"])
    assert code == 0
    report = json.loads((out_dir / "disk.report.json").read_text())
    steps = [p["name"] for p in report["provenance"]]
    assert steps == ["otsu", "components", "measure"]


def test_invert_flag_via_cli(tmp_path, capsys):
    img = np.full((64, 64), 220, dtype=np.uint8)
    img[disk_mask((64, 64), 32, 32, 10)] = 20
    src = tmp_path / "dark.pgm"
    src.write_bytes(write_pgm(img))
    code = main(["run", str(src), "--invert", "--out-dir", str(tmp_path / "out"),
                 "--cm-per-px", "0.05", "--fixed-timestamp", "2026-01-01T00:00:00Z"])
    assert code == 0
    assert "diameter_cm=1.0" in capsys.readouterr().out
