"""Batch runner and service launcher.

`mammoseg run` reproduces the full pipeline headlessly over one image or
a directory, writing per-image artifacts (mask PGM, histogram JSON,
report JSON) plus a one-line summary per image on stdout. `mammoseg
serve` starts the HTTP case service.

Exit codes for `run`: 0 all images processed, 1 at least one image
failed (the rest still processed), 2 usage error before any processing.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import MammosegError
from .measure import Calibration
from .pgm import mask_to_pgm, read_pgm
from .pipeline import DEFAULT_STEPS, PipelineConfig, canonical_step, measure_auto, run_steps
from .report import PatientRecord, generate_report, report_to_dict, round_half_up


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mammoseg")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="process PGM images through the pipeline")
    run.add_argument("inputs", nargs="+", help="PGM files or directories of PGMs")
    run.add_argument("--out-dir", default="mammoseg-out", help="artifact directory")
    run.add_argument("--median-window", type=int, default=3)
    run.add_argument("--se", default="square3", choices=["square3", "square5", "cross3"])
    run.add_argument("--connectivity", type=int, default=8, choices=[4, 8])
    run.add_argument("--h-min", type=float, default=1.0)
    run.add_argument("--min-area", type=int, default=5)
    run.add_argument("--invert", action="store_true",
                     help="segment dark lesions instead of bright ones")
    run.add_argument("--cm-per-px", type=float, default=None,
                     help="calibration factor; enables classification and reports")
    run.add_argument("--classify", action="store_true",
                     help="require classification (errors out without --cm-per-px)")
    run.add_argument("--patient-id", default=None,
                     help="patient id for reports (default: image stem)")
    run.add_argument("--pipeline", default=",".join(DEFAULT_STEPS),
                     help="comma-separated step list override")
    run.add_argument("--fixed-timestamp", default=None,
                     help="fixed report timestamp (tests only)")

    serve = sub.add_parser("serve", help="start the HTTP case service")
    env = os.environ
    serve.add_argument("--data-dir", default=env.get("MAMMOSEG_DATA_DIR", "mammoseg-cases"))
    serve.add_argument("--host", default=env.get("MAMMOSEG_HOST", "127.0.0.1"))
    serve.add_argument("--port", type=int, default=int(env.get("MAMMOSEG_PORT", "8000")))
    serve.add_argument("--ui-dir", default=env.get("MAMMOSEG_UI_DIR"),
                       help="serve a built web UI from this directory at /")
    return parser


def _collect_inputs(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(p.glob("*.pgm")))
        else:
            files.append(p)
    return files


def _usage_error(parser: argparse.ArgumentParser, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    parser.print_usage(sys.stderr)
    return 2


def _run_batch(args, parser) -> int:
    steps = tuple(s.strip() for s in args.pipeline.split(",") if s.strip())
    known = {"median", "otsu", "open", "close", "erode", "dilate",
             "watershed", "components"}
    for step in steps:
        if canonical_step(step) not in known:
            return _usage_error(parser, f"unknown pipeline step {step!r}")
    if args.median_window < 1 or args.median_window % 2 == 0:
        return _usage_error(parser, "--median-window must be odd and >= 1")
    if args.h_min < 0:
        return _usage_error(parser, "--h-min must be >= 0")
    if args.min_area < 1:
        return _usage_error(parser, "--min-area must be >= 1")
    if args.classify and args.cm_per_px is None:
        return _usage_error(parser, "--classify requires --cm-per-px")
    if args.cm_per_px is not None and args.cm_per_px <= 0:
        return _usage_error(parser, "--cm-per-px must be positive")
    if args.fixed_timestamp is not None:
        from datetime import datetime

        try:
            datetime.strptime(args.fixed_timestamp, "%Y-%m-%dT%H:%M:%SZ")
        except ValueError:
            return _usage_error(
                parser, "--fixed-timestamp must look like 2026-01-01T00:00:00Z"
            )

    inputs = _collect_inputs(args.inputs)
    if not inputs:
        return _usage_error(parser, "no input images found")

    cal = Calibration(args.cm_per_px) if args.cm_per_px is not None else None
    config = PipelineConfig(
        median_window=args.median_window,
        se_name=args.se,
        connectivity=args.connectivity,
        h_min=args.h_min,
        min_area=args.min_area,
        invert=args.invert,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    failed = False
    for path in inputs:
        try:
            _process_one(path, steps, config, cal, args, out_dir)
        except (MammosegError, OSError, ValueError) as exc:
            failed = True
            print(f"{path.name}: error: {exc}", file=sys.stderr)
    return 1 if failed else 0


def _process_one(path: Path, steps, config, cal, args, out_dir: Path) -> None:
    from .imaging import histogram

    image = read_pgm(path.read_bytes())
    state = run_steps(image, steps, config)
    stem = path.stem

    if state.mask is not None:
        (out_dir / f"{stem}.mask.pgm").write_bytes(mask_to_pgm(state.mask))
    hist = histogram(state.image)
    (out_dir / f"{stem}.histogram.json").write_text(
        json.dumps([int(c) for c in hist], separators=(",", ":")) + "\n"
    )

    measurement = measure_auto(state, cal, min_area=config.min_area)
    if cal is not None:
        record = PatientRecord(patient_id=args.patient_id or stem)
        report = generate_report(
            record, measurement, cal, state.provenance,
            generated_at=args.fixed_timestamp,
        )
        (out_dir / f"{stem}.report.json").write_text(
            json.dumps(report_to_dict(report), sort_keys=True, separators=(",", ":"))
            + "\n"
        )
        print(
            f"{path.name}: diameter_px={round_half_up(measurement.pixels):.2f}"
            f" diameter_cm={round_half_up(measurement.cm):.2f}"
            f" type={report.tumor_type.value} stage={report.risk_stage.value}"
        )
    else:
        print(f"{path.name}: diameter_px={round_half_up(measurement.pixels):.2f}")


def _serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "run":
        return _run_batch(args, parser)
    return _serve(args)


if __name__ == "__main__":
    sys.exit(main())
