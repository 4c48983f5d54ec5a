"""Command-line interface.

Subcommands: split, extract-features, augment, train, predict, evaluate,
synthetic. Exit codes: 0 success, 1 usage error, 2 data error,
3 protocol violation (e.g. train/test overlap).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import List, Optional

from . import ingestion, metrics, model_io, pipeline
from .augmentation import AugmentationConfig
from .errors import DataError, ProtocolError
from .features import OriginIndex
from .forest import ForestConfig
from .synthetic import generate_benchmark

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_PROTOCOL = 3


def _add_origin_flag(p):
    p.add_argument("--origin-index", type=int, default=8,
                   help="landmark index used as the angle origin (default: 8, chin)")
    p.add_argument("--strict-degenerate", action="store_true",
                   help="fail instead of warning when a landmark coincides with the origin")


def _add_aug_flags(p):
    p.add_argument("--rotation-range", type=float, default=0.26)
    p.add_argument("--shift-range", type=float, default=0.1)
    p.add_argument("--scale-range", type=float, default=0.1)
    p.add_argument("--copies", type=int, default=29,
                   help="augmented copies per frame (29 + the original = 30x)")


def _add_forest_flags(p):
    p.add_argument("--n-trees", type=int, default=100)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--min-samples-split", type=int, default=2)
    p.add_argument("--max-features", type=int, default=None,
                   help="features tried per split (default: ceil(sqrt(k)))")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aslface",
        description="Classify ASL sentence frames as assertions or statements "
                    "from facial-landmark geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="stratified train/test split of a landmark CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--train-out", required=True)
    p.add_argument("--test-out", required=True)
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("extract-features", help="landmark CSV -> angle CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    _add_origin_flag(p)

    p = sub.add_parser("augment", help="expand a landmark CSV with affine copies")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_aug_flags(p)

    p = sub.add_parser("train", help="train PCA + random forest on a landmark CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--model-out", required=True)
    p.add_argument("--manifest-out", default=None,
                   help="run manifest path (default: run_manifest.json next to the model)")
    p.add_argument("--from-manifest", default=None,
                   help="reproduce a previous run from its manifest; overrides other flags")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=pipeline.DEFAULT_K)
    _add_origin_flag(p)
    _add_aug_flags(p)
    _add_forest_flags(p)

    p = sub.add_parser("predict", help="predict classes for a landmark CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--strict-degenerate", action="store_true")

    p = sub.add_parser("evaluate", help="evaluate a model on a labeled landmark CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--report-out", default=None, help="machine-readable JSON report path")
    p.add_argument("--table-out", default=None, help="text table path (also printed)")
    p.add_argument("--strict-degenerate", action="store_true")

    p = sub.add_parser("synthetic", help="generate the synthetic benchmark landmark CSV")
    p.add_argument("--output", required=True)
    p.add_argument("--n-frames", type=int, default=175)
    p.add_argument("--seed", type=int, default=7)
    return parser


def _cmd_split(args) -> int:
    data = ingestion.read_landmark_csv(args.input)
    train, test = pipeline.split_dataset(data, args.train_fraction, args.seed)
    ingestion.write_landmark_csv(args.train_out, train)
    ingestion.write_landmark_csv(args.test_out, test)
    print(f"split {len(data)} frames -> {len(train)} train / {len(test)} test")
    return EXIT_OK


def _cmd_extract_features(args) -> int:
    data = ingestion.read_landmark_csv(args.input)
    origin = OriginIndex(args.origin_index)
    rows = []
    for frame in data:
        from .features import angles_from_frame

        vec = angles_from_frame(frame, origin, strict=args.strict_degenerate)
        rows.append((frame.frame_id, frame.label, vec))
    ingestion.write_angle_csv(args.output, rows)
    print(f"wrote {len(rows)} angle rows to {args.output}")
    return EXIT_OK


def _cmd_augment(args) -> int:
    data = ingestion.read_landmark_csv(args.input).require_labels()
    config = AugmentationConfig(
        rotation_range=args.rotation_range,
        shift_range=args.shift_range,
        scale_range=args.scale_range,
        copies_per_frame=args.copies,
        seed=args.seed,
    )
    from .augmentation import augment_dataset

    out = augment_dataset(data, config)
    ingestion.write_landmark_csv(args.output, out)
    print(f"augmented {len(data)} frames to {len(out)}")
    return EXIT_OK


def _cmd_train(args) -> int:
    if args.from_manifest is not None:
        manifest = pipeline.read_run_manifest(args.from_manifest)
        k, origin, aug_config, forest_config = pipeline.configs_from_manifest(manifest)
        digest = pipeline.sha256_file(args.input)
        if digest != manifest["input"]["sha256"]:
            raise DataError(
                f"input {args.input} does not match the manifest's sha256; "
                "reproduction would differ"
            )
    else:
        k = args.k
        origin = OriginIndex(args.origin_index)
        aug_config = AugmentationConfig(
            rotation_range=args.rotation_range,
            shift_range=args.shift_range,
            scale_range=args.scale_range,
            copies_per_frame=args.copies,
            seed=args.seed,
        )
        forest_config = ForestConfig(
            n_trees=args.n_trees,
            max_depth=args.max_depth,
            min_samples_split=args.min_samples_split,
            max_features=args.max_features,
            seed=args.seed,
        )

    data = ingestion.read_landmark_csv(args.input).require_labels()
    strict = getattr(args, "strict_degenerate", False)
    bundle = pipeline.train_pipeline(data, k, origin, aug_config, forest_config, strict)
    model_io.save_bundle(args.model_out, bundle)

    manifest_out = args.manifest_out or os.path.join(
        os.path.dirname(os.path.abspath(args.model_out)), "run_manifest.json"
    )
    manifest = pipeline.build_run_manifest(args.input, k, origin, aug_config, forest_config)
    pipeline.write_run_manifest(manifest_out, manifest)
    print(f"trained on {len(data)} frames (x{aug_config.copies_per_frame + 1} augmented); "
          f"model: {args.model_out}, manifest: {manifest_out}")
    return EXIT_OK


def _cmd_predict(args) -> int:
    bundle = model_io.load_bundle(args.model)
    data = ingestion.read_landmark_csv(args.input)
    rows = pipeline.predict_frames(bundle, data, args.strict_degenerate)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frame_id", "predicted", "vote_AS", "vote_ST"])
        for frame_id, cls, (p_as, p_st) in rows:
            writer.writerow([frame_id, cls.name, f"{p_as:.12g}", f"{p_st:.12g}"])
    print(f"wrote {len(rows)} predictions to {args.output}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    bundle = model_io.load_bundle(args.model)
    data = ingestion.read_landmark_csv(args.input)
    report = metrics.evaluate(
        bundle.forest,
        bundle.pca,
        data,
        bundle.origin,
        training_manifest=bundle.training_manifest,
        strict_degenerate=args.strict_degenerate,
    )
    table = metrics.render_table(report)
    print(table)
    if args.table_out:
        with open(args.table_out, "w", encoding="utf-8") as fh:
            fh.write(table + "\n")
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            json.dump(metrics.report_to_dict(report), fh, sort_keys=True, indent=1)
            fh.write("\n")
    return EXIT_OK


def _cmd_synthetic(args) -> int:
    data = generate_benchmark(n_frames=args.n_frames, seed=args.seed)
    ingestion.write_landmark_csv(args.output, data)
    print(f"wrote {len(data)} synthetic frames to {args.output}")
    return EXIT_OK


_HANDLERS = {
    "split": _cmd_split,
    "extract-features": _cmd_extract_features,
    "augment": _cmd_augment,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "evaluate": _cmd_evaluate,
    "synthetic": _cmd_synthetic,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses exit code 2 for usage errors; our contract says 1
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except ProtocolError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PROTOCOL
    except DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main(argv=None))
