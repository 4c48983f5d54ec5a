"""CLI: videos or images in, landmark CSV + skip report out."""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .csv_out import read_labels_sidecar, write_landmark_csv, write_skip_report
from .extract import FaceDetector, extract_batch, load_predictor

VIDEO_SUFFIXES = {".avi", ".mp4", ".mov", ".mkv", ".png", ".jpg", ".jpeg", ".bmp"}


def _collect_inputs(inputs: List[str]) -> List[str]:
    paths = []
    for item in inputs:
        if os.path.isdir(item):
            for name in sorted(os.listdir(item)):
                if os.path.splitext(name)[1].lower() in VIDEO_SUFFIXES:
                    paths.append(os.path.join(item, name))
        else:
            paths.append(item)
    return paths


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asl-extract",
        description="Extract 68 facial landmarks from the midpoint frame of each video.",
    )
    parser.add_argument("inputs", nargs="+", help="video/image files or directories")
    parser.add_argument("--output", required=True, help="landmark CSV path")
    parser.add_argument("--labels", default=None, help="sidecar CSV (video_id,label)")
    parser.add_argument("--skip-report", default=None,
                        help="CSV of skipped inputs (default: <output>.skipped.csv)")
    parser.add_argument("--dlib-model", default=None,
                        help="dlib 68-point shape-predictor model file (needs dlib installed)")
    parser.add_argument("--mean-shape-asset", default=None,
                        help="alternative mean-shape JSON asset (default: bundled)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        labels = read_labels_sidecar(args.labels) if args.labels else {}
        paths = _collect_inputs(args.inputs)
        if not paths:
            print("error: no input files found", file=sys.stderr)
            return 2
        predictor = load_predictor(args.dlib_model, args.mean_shape_asset)
        records = extract_batch(paths, labels, FaceDetector(), predictor)
        skipped = write_landmark_csv(args.output, records)
        skip_path = args.skip_report or f"{args.output}.skipped.csv"
        write_skip_report(skip_path, skipped)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f"extracted {len(records) - len(skipped)}/{len(records)} inputs "
          f"to {args.output} ({len(skipped)} skipped)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
