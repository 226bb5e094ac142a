#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
The ``temposgm`` command line tool.

Subcommands:

    run          temporal matching of a sequence with moving object detection
    match        full range matching of a single stereo pair
    calib-noise  estimation of the filter noise from a sequence with ground truth
    detect       moving object detection in one frame of a sequence
    synth        generation of a synthetic sequence
    eval         accuracy and runtime comparison of matcher configurations

Exit codes: 0 on success, 1 on data errors and 2 on usage errors.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from temposgm.calibration import (
    CalibrationReport,
    accumulate_error_map,
    estimate_measurement_noise,
    estimate_process_noise,
    normalize_error_map,
)
from temposgm.config import RunConfig, read_toml
from temposgm.dataset import (
    MovingObject,
    SynthConfig,
    frame_motions,
    frame_name,
    load_kitti_sequence,
    load_sequence_calib,
    read_gray,
    synth_sequence,
    write_disparity_png,
    write_image,
    write_sequence,
)
from temposgm.detection import (
    detect_moving_objects,
    draw_boxes,
    write_detections,
)
from temposgm.errors import TempoSgmError
from temposgm.evaluation import (
    MODES,
    BenchmarkConfig,
    format_table,
    run_benchmark,
    write_csv,
)
from temposgm.filtering import TemporalMatcher
from temposgm.geometry import RigidMotion, StereoCalib
from temposgm.parallel import set_threads
from temposgm.sgm import median_refine, sgm_match

__all__ = ["build_parser", "main"]

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2


def _existing_path(value: str) -> Path:
    path = Path(value)
    if not path.exists():
        raise argparse.ArgumentTypeError(f"'{value}' doesn't exist")
    return path


def _add_config_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("configuration")
    group.add_argument("--config", type=_existing_path, help="TOML configuration file")
    group.add_argument("--threads", type=int, help="number of worker threads")
    group.add_argument("--paths", type=int, choices=(4, 8), help="aggregation paths")
    group.add_argument(
        "--path-set", choices=("nondiag", "diag"), help="the paths used with --paths 4"
    )
    group.add_argument("--q", type=float, help="process noise variance [px^2]")
    group.add_argument("--r", type=float, help="measurement noise variance [px^2]")
    group.add_argument("--d-max", type=int, help="number of disparity levels")


def _add_sequence_flags(parser: argparse.ArgumentParser):
    parser.add_argument("sequence", type=_existing_path, help="sequence folder")
    parser.add_argument("--poses", type=_existing_path, help="pose file, 3x4 per line")
    parser.add_argument(
        "--gt", type=_existing_path, help="ground truth disparity folder"
    )


def build_parser() -> argparse.ArgumentParser:
    """
    Create the argument parser of all subcommands.
    """
    parser = argparse.ArgumentParser(
        prog="temposgm",
        description="Temporal semi-global stereo matching.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="temporal matching of a sequence")
    _add_sequence_flags(run)
    _add_config_flags(run)
    run.add_argument("--out", type=Path, required=True, help="output folder")
    run.add_argument("--overlay", action="store_true", help="write detection overlays")
    run.set_defaults(handler=_run)

    match = commands.add_parser("match", help="full range matching of one pair")
    match.add_argument("--left", type=_existing_path, required=True)
    match.add_argument("--right", type=_existing_path, required=True)
    match.add_argument("--out", type=Path, required=True, help="disparity PNG")
    _add_config_flags(match)
    match.set_defaults(handler=_match)

    calib = commands.add_parser("calib-noise", help="estimate q and r")
    _add_sequence_flags(calib)
    _add_config_flags(calib)
    calib.add_argument("--out", type=Path, help="folder for the report, map and plots")
    calib.set_defaults(handler=_calib_noise)

    detect = commands.add_parser("detect", help="detect moving objects in one frame")
    _add_sequence_flags(detect)
    _add_config_flags(detect)
    detect.add_argument("--frame", type=int, default=1, help="frame index, at least 1")
    detect.add_argument("--out", type=Path, required=True, help="output folder")
    detect.add_argument("--overlay", action="store_true", help="write the overlay")
    detect.set_defaults(handler=_detect)

    synth = commands.add_parser("synth", help="generate a synthetic sequence")
    synth.add_argument("--out", type=Path, required=True, help="sequence folder")
    synth.add_argument("--frames", type=int, default=10)
    synth.add_argument("--width", type=int, default=320)
    synth.add_argument("--height", type=int, default=240)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument(
        "--objects", type=int, default=1, help="number of moving objects"
    )
    synth.add_argument("--noise", type=float, default=0.0, help="intensity noise sigma")
    synth.add_argument(
        "--forward", type=float, default=0.0, help="camera advance per frame [m]"
    )
    synth.add_argument("--d-max", type=int, default=128)
    synth.set_defaults(handler=_synth)

    evaluate = commands.add_parser("eval", help="benchmark matcher configurations")
    _add_sequence_flags(evaluate)
    _add_config_flags(evaluate)
    evaluate.add_argument(
        "--modes",
        default="conventional,temporal,ground-truth",
        help=f"comma separated modes out of {', '.join(MODES)}",
    )
    evaluate.add_argument(
        "--table",
        action="store_true",
        help="compare the full range matcher with reduced 4 and 8 path variants",
    )
    evaluate.add_argument(
        "--strict", action="store_true", help="missing pixels are outliers"
    )
    evaluate.add_argument("--out", type=Path, help="folder for report.csv")
    evaluate.set_defaults(handler=_eval)
    return parser


def _overrides(args) -> dict:
    return {
        "threads": args.threads,
        "paths": args.paths,
        "path_set": args.path_set,
        "q": args.q,
        "r": args.r,
        "d_max": args.d_max,
    }


def _run_config(args, sequence: Optional[Path] = None) -> RunConfig:
    values = {}
    if sequence is not None and (sequence / "calib.toml").is_file():
        values.update(read_toml(sequence / "calib.toml"))
    if args.config is not None:
        values.update(read_toml(args.config))
    cfg = RunConfig(
        values,
        _overrides(args),
        sequence=sequence,
        out_dir=getattr(args, "out", None),
        poses=getattr(args, "poses", None),
        gt_dir=getattr(args, "gt", None),
    )
    set_threads(cfg.threads)
    return cfg


def _sequence_calib(cfg: RunConfig, shape) -> StereoCalib:
    if cfg.has_calib():
        return cfg.calib(width=shape[1], height=shape[0])
    return load_sequence_calib(cfg.sequence, d_max=cfg.d_max)


def _load(cfg: RunConfig):
    frames = load_kitti_sequence(
        cfg.sequence, cfg.poses, cfg.gt_dir, threads=cfg.threads
    )
    calib = _sequence_calib(cfg, frames[0].shape)
    if calib.shape != frames[0].shape:
        raise TempoSgmError(
            f"The calibration {calib.shape} doesn't match the images {frames[0].shape}"
        )
    return frames, calib


def _run(args) -> int:
    cfg = _run_config(args, args.sequence)
    frames, calib = _load(cfg)
    matcher = TemporalMatcher(calib, cfg.sgm_params(), cfg.filter_config())
    detect_cfg = cfg.detect_config()
    detections = {}
    out = cfg.out_dir
    for frame, motion in zip(frames, frame_motions(frames)):
        result = matcher.step(frame.left, frame.right, motion)
        boxes = []
        if motion is not None:
            boxes = detect_moving_objects(
                result.prior, result.measurement, detect_cfg
            )
        detections[frame.index] = boxes
        write_disparity_png(out / "disp" / frame_name(frame.index), result.export)
        if args.overlay:
            write_image(
                out / "overlay" / frame_name(frame.index), draw_boxes(frame.left, boxes)
            )
        _logger.info(
            "Frame %d: %.1f levels searched per pixel, %d moving objects",
            frame.index,
            result.mean_range,
            len(boxes),
        )
    write_detections(out / "detections.txt", detections)
    return EXIT_OK


def _match(args) -> int:
    cfg = _run_config(args)
    left = read_gray(args.left)
    right = read_gray(args.right)
    disparity = median_refine(sgm_match(left, right, None, cfg.sgm_params()))
    write_disparity_png(args.out, disparity)
    _logger.info("Matched %s, %.1f%% valid", args.left, 100.0 * disparity.density())
    return EXIT_OK


def _calib_noise(args) -> int:
    cfg = _run_config(args, args.sequence)
    frames, calib = _load(cfg)
    q, process = estimate_process_noise(frames, calib, cfg.threads)
    r, measurement = estimate_measurement_noise(frames, cfg.sgm_params(), cfg.threads)
    report = CalibrationReport(q, r, process, measurement)
    text = report.to_text()
    sys.stdout.write(text)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "calibration.toml").write_text(text, encoding="utf-8")
        error_map = accumulate_error_map(frames, calib, cfg.threads)
        write_image(args.out / "error_map.png", normalize_error_map(error_map))
        for name, histogram in (("process", process), ("measurement", measurement)):
            figure = histogram.plot(histogram.fit(), title=f"{name} noise")
            if figure is not None:
                figure.savefig(args.out / f"{name}_hist.png")
    return EXIT_OK


def _detect(args) -> int:
    cfg = _run_config(args, args.sequence)
    frames, calib = _load(cfg)
    positions = {frame.index: i for i, frame in enumerate(frames)}
    if args.frame not in positions or positions[args.frame] == 0:
        raise TempoSgmError(f"Frame {args.frame} has no predecessor in the sequence")
    position = positions[args.frame]
    previous, current = frames[position - 1], frames[position]
    motion = frame_motions([previous, current])[1]
    if motion is None:
        raise TempoSgmError(
            f"Frame {args.frame} needs the poses of it and its predecessor"
        )
    matcher = TemporalMatcher(calib, cfg.sgm_params(), cfg.filter_config())
    matcher.step(previous.left, previous.right)
    result = matcher.step(current.left, current.right, motion)
    boxes = detect_moving_objects(
        result.prior, result.measurement, cfg.detect_config()
    )
    write_detections(cfg.out_dir / "detections.txt", {current.index: boxes})
    if args.overlay:
        write_image(
            cfg.out_dir / frame_name(current.index), draw_boxes(current.left, boxes)
        )
    for box in boxes:
        sys.stdout.write(
            f"{current.index} {box.x0} {box.y0} {box.x1} {box.y1} {box.score:.4f}\n"
        )
    return EXIT_OK


def _synth(args) -> int:
    if args.frames < 1 or args.width < 64 or args.height < 64:
        raise TempoSgmError(
            "A synthetic sequence needs at least one frame of 64x64 pixels"
        )
    focal = 0.8 * args.width
    calib = StereoCalib(
        focal_px=focal,
        cx=args.width / 2.0,
        cy=args.height / 2.0,
        baseline_m=0.5,
        width=args.width,
        height=args.height,
        d_max=args.d_max,
    )
    # the plane lies at a disparity of 20 levels
    plane_depth = focal * calib.baseline_m / 20.0
    rng = np.random.default_rng(args.seed)
    objects = []
    for i in range(args.objects):
        x = int(rng.integers(0, max(1, args.width - 40)))
        y = int(rng.integers(args.height // 3, args.height - 40))
        direction = 1 if i % 2 == 0 else -1
        objects.append(MovingObject(x, y, 40, 40, 10.0, (3 * direction, 0), seed=i + 1))
    step = RigidMotion(translation=[0.0, 0.0, args.forward])
    trajectory = [step] * (args.frames - 1)
    cfg = SynthConfig(
        calib,
        frames=args.frames,
        plane_depth=plane_depth,
        seed=args.seed,
        trajectory=trajectory,
        objects=objects,
        noise_sigma=args.noise,
    )
    write_sequence(synth_sequence(cfg), args.out, calib)
    return EXIT_OK


def _benchmark_configs(args, cfg: RunConfig) -> List[BenchmarkConfig]:
    params = cfg.sgm_params()
    filter_cfg = cfg.filter_config()
    if args.table:
        table = [
            ("full-8", "conventional", params.replace(paths=8)),
            (
                "reduced-4-nondiag",
                "temporal",
                params.replace(paths=4, path_set="nondiagonal"),
            ),
            (
                "reduced-4-diag",
                "temporal",
                params.replace(paths=4, path_set="diagonal"),
            ),
            ("reduced-8", "temporal", params.replace(paths=8)),
        ]
        return [
            BenchmarkConfig(name, mode, table_params, filter_cfg, strict=args.strict)
            for name, mode, table_params in table
        ]
    modes = [mode.strip() for mode in args.modes.split(",") if mode.strip()]
    for mode in modes:
        if mode not in MODES:
            raise argparse.ArgumentTypeError(f"Unknown mode '{mode}'")
    return [
        BenchmarkConfig(mode, mode, params, filter_cfg, strict=args.strict)
        for mode in modes
    ]


def _eval(args) -> int:
    cfg = _run_config(args, args.sequence)
    configs = _benchmark_configs(args, cfg)
    frames, calib = _load(cfg)
    results = run_benchmark(frames, calib, configs)
    sys.stdout.write(format_table(results) + "\n")
    if args.out is not None:
        write_csv(args.out / "report.csv", results)
    return EXIT_OK


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line tool.

    :param argv: The arguments, ``sys.argv[1:]`` if omitted.
    :return: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK
    _configure_logging(args)
    try:
        return args.handler(args)
    except argparse.ArgumentTypeError as error:
        sys.stderr.write(f"temposgm {args.command}: {error}\n")
        return EXIT_USAGE
    except (TempoSgmError, ValueError, OSError) as error:
        sys.stderr.write(f"temposgm {args.command}: {error}\n")
        return EXIT_DATA_ERROR
