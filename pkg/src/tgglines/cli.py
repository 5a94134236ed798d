"""Command-line interface.

Subcommands: ``detect`` (image -> segments JSON/SVG), ``render``
(detection JSON or image -> SVG), ``eval`` (ground truth + detection ->
match report), ``batch`` (directory of images, optional sibling ground
truth, parallel workers).

Exit codes: 0 success, 1 usage error, 2 unreadable or undecodable
input/output, 3 batch completed with some failures.  Set TGGLINES_LOG
to DEBUG/INFO/WARNING to control logging verbosity.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import jsonio, svg
from .evaluation import EvalConfig, evaluate, format_percent
from .pipeline import detect
from .raster import RasterError, binarize, load_image

__all__ = ["main"]

log = logging.getLogger("tgglines.cli")

_IMAGE_SUFFIXES = (".png", ".pbm", ".pgm")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PARTIAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here wants 1
    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tgglines", description="Skeleton-graph line segment detector")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_binarize_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threshold", type=int, default=128, metavar="0-255",
                       help="luminance threshold (default 128)")
        p.add_argument("--invert", action="store_true",
                       help="treat bright pixels as ink")

    def add_eval_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--angle-tol", type=float, default=10.0, metavar="DEG")
        p.add_argument("--dist-tol", type=float, default=3.0, metavar="PX")
        p.add_argument("--full-threshold", type=float, default=0.9, metavar="FRAC")
        p.add_argument("--double-line", action="store_true",
                       help="score each annotated line as two parallel rails")

    p_detect = sub.add_parser("detect", help="detect segments in one image")
    p_detect.add_argument("input")
    p_detect.add_argument("-o", "--output", metavar="PATH")
    p_detect.add_argument("--format", choices=("json", "svg", "both"), default="json")
    add_binarize_flags(p_detect)

    p_render = sub.add_parser("render", help="render detection JSON (or an image) to SVG")
    p_render.add_argument("input")
    p_render.add_argument("-o", "--output", metavar="PATH")
    p_render.add_argument("--background", metavar="PNG",
                          help="embed this PNG under the strokes")
    add_binarize_flags(p_render)

    p_eval = sub.add_parser("eval", help="score a detection against ground truth")
    p_eval.add_argument("ground_truth")
    p_eval.add_argument("detection")
    p_eval.add_argument("-o", "--output", metavar="PATH")
    add_eval_flags(p_eval)

    p_batch = sub.add_parser("batch", help="process a directory of images")
    p_batch.add_argument("directory")
    p_batch.add_argument("-o", "--output", metavar="DIR",
                         help="output directory (default: input directory)")
    p_batch.add_argument("--format", choices=("json", "svg", "both"), default="json")
    p_batch.add_argument("--jobs", type=int, default=1, metavar="N")
    add_binarize_flags(p_batch)
    add_eval_flags(p_batch)
    return parser


def _check_threshold(args) -> None:
    if not 0 <= args.threshold <= 255:
        raise _UsageError(f"--threshold {args.threshold} outside [0, 255]")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")


def _detect_file(path: str, threshold: int, invert: bool) -> dict:
    gray = load_image(path)
    mask = binarize(gray, threshold=threshold, foreground_is_dark=not invert)
    return jsonio.detection_to_dict(detect(mask))


def _cmd_detect(args) -> int:
    _check_threshold(args)
    doc = _detect_file(args.input, args.threshold, args.invert)
    if args.format == "json":
        _emit(jsonio.dumps_canonical(doc), args.output)
    elif args.format == "svg":
        _emit(svg.render_svg(doc), args.output)
    else:
        if args.output is None:
            raise _UsageError("--format both requires -o")
        base = Path(args.output)
        if base.suffix in (".json", ".svg"):
            base = base.with_suffix("")
        _emit(jsonio.dumps_canonical(doc), str(base) + ".json")
        _emit(svg.render_svg(doc), str(base) + ".svg")
    return EXIT_OK


def _cmd_render(args) -> int:
    _check_threshold(args)
    path = Path(args.input)
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise jsonio.SchemaError(f"root: not valid JSON ({exc})") from None
        jsonio.segments_from_detection_dict(doc)  # field-level validation
    else:
        doc = _detect_file(args.input, args.threshold, args.invert)
    background = None
    if args.background:
        background = Path(args.background).read_bytes()
    _emit(svg.render_svg(doc, background_png=background), args.output)
    return EXIT_OK


def _eval_config(args) -> EvalConfig:
    try:
        return EvalConfig(
            angle_tol_deg=args.angle_tol,
            dist_tol_px=args.dist_tol,
            full_threshold=args.full_threshold,
            double_line=args.double_line,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise jsonio.SchemaError(f"{path}: not valid JSON ({exc})") from None


def _cmd_eval(args) -> int:
    config = _eval_config(args)
    gt = jsonio.ground_truth_from_dict(_load_json(args.ground_truth))
    detected = jsonio.segments_from_detection_dict(_load_json(args.detection))
    report = evaluate(gt, detected, config)
    _emit(jsonio.dumps_canonical(jsonio.report_to_dict(report)), args.output)
    print(f"accuracy: {format_percent(report.accuracy)}")
    return EXIT_OK


def _cmd_batch(args) -> int:
    _check_threshold(args)
    config = _eval_config(args)
    in_dir = Path(args.directory)
    if not in_dir.is_dir():
        raise OSError(f"{in_dir} is not a directory")
    out_dir = Path(args.output) if args.output else in_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    images = sorted(
        p for p in in_dir.iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
    )
    if args.jobs < 1:
        raise _UsageError(f"--jobs {args.jobs} must be at least 1")

    def run_one(image_path: Path) -> dict:
        entry: dict = {"image": image_path.name}
        try:
            doc = _detect_file(str(image_path), args.threshold, args.invert)
            stem = out_dir / image_path.stem
            if args.format in ("json", "both"):
                _emit(jsonio.dumps_canonical(doc), f"{stem}.json")
            if args.format in ("svg", "both"):
                _emit(svg.render_svg(doc), f"{stem}.svg")
            entry["segments"] = len(doc["segments"])
            gt_path = image_path.with_name(image_path.stem + ".gt.json")
            if gt_path.exists():
                gt = jsonio.ground_truth_from_dict(_load_json(str(gt_path)))
                detected = jsonio.segments_from_detection_dict(doc)
                report = evaluate(gt, detected, config)
                _emit(
                    jsonio.dumps_canonical(jsonio.report_to_dict(report)),
                    f"{stem}.report.json",
                )
                entry["accuracy"] = report.accuracy
        except (RasterError, jsonio.SchemaError, OSError, ValueError) as exc:
            log.warning("%s failed: %s", image_path.name, exc)
            entry["error"] = str(exc)
        return entry

    if args.jobs == 1:
        entries = [run_one(p) for p in images]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            entries = list(pool.map(run_one, images))

    failed = [e for e in entries if "error" in e]
    accuracies = [e["accuracy"] for e in entries if "accuracy" in e]
    summary = {
        "images": len(entries),
        "failed": len(failed),
        "evaluated": len(accuracies),
        "mean_accuracy": (sum(accuracies) / len(accuracies)) if accuracies else None,
        "entries": entries,
    }
    _emit(jsonio.dumps_canonical(summary), str(out_dir / "summary.json"))
    if accuracies:
        print(f"mean accuracy: {format_percent(summary['mean_accuracy'])}")
    print(f"processed {len(entries)} images, {len(failed)} failed")
    return EXIT_PARTIAL if failed else EXIT_OK


_COMMANDS = {
    "detect": _cmd_detect,
    "render": _cmd_render,
    "eval": _cmd_eval,
    "batch": _cmd_batch,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("TGGLINES_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"tgglines: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"tgglines: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RasterError, jsonio.SchemaError) as exc:
        print(f"tgglines: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"tgglines: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
