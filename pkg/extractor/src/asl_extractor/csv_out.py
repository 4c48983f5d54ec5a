"""Landmark-CSV and skip-report output.

The landmark schema is the byte-exact contract with the classification
pipeline: header frame_id,label,x0,y0,...,x67,y67, UTF-8, comma
separated, '.' decimal, coordinates at 12 significant digits, labels as
the literal strings "AS"/"ST" (empty when unlabeled).
"""

from __future__ import annotations

import csv
import os
from typing import List, Sequence

from .extract import ExtractionRecord

LANDMARK_HEADER = ["frame_id", "label"] + [
    f"{axis}{i}" for i in range(68) for axis in ("x", "y")
]
SKIP_HEADER = ["video_path", "frame_index", "reason"]
VALID_LABELS = {"AS", "ST", None}


def frame_id_for(record: ExtractionRecord) -> str:
    base = os.path.splitext(os.path.basename(record.video_path))[0]
    return f"{base}@{record.frame_index}"


def write_landmark_csv(path: str, records: Sequence[ExtractionRecord]) -> List[ExtractionRecord]:
    """Write successful records; returns the skipped ones."""
    skipped = []
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(LANDMARK_HEADER)
        for record in records:
            if not record.success:
                skipped.append(record)
                continue
            if record.label not in VALID_LABELS:
                raise ValueError(
                    f"{record.video_path}: label must be AS, ST or empty, got {record.label!r}"
                )
            row = [frame_id_for(record), record.label or ""]
            row += [f"{v:.12g}" for v in record.points.ravel()]
            writer.writerow(row)
    return skipped


def write_skip_report(path: str, skipped: Sequence[ExtractionRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SKIP_HEADER)
        for record in skipped:
            writer.writerow([record.video_path, record.frame_index, record.skip_reason])


def read_labels_sidecar(path: str) -> dict:
    """video_id,label pairs; header row mandatory."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["video_id", "label"]:
            raise ValueError(f"{path}: expected header video_id,label")
        out = {}
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"{path}: malformed row {row!r}")
            out[row[0]] = row[1] or None
        return out
