"""CSV readers and writers for the pipeline's two file formats.

Landmark CSV: frame_id,label,x0,y0,...,x67,y67 (138 columns). Angle CSV:
frame_id,label,a1,...,a67 (69 columns, radians). Both are UTF-8, comma
separated, '.' decimal, header row mandatory. Labels are the literal
strings "AS"/"ST"; an empty label field means unlabeled. Angles are
written with 12 significant digits, which round-trips to < 1e-9 rad.

Readers never silently drop rows: the first invalid row raises
RowParseError carrying its line number.
"""

from __future__ import annotations

import csv
import math
import os
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import MalformedHeader, MissingFile, RowParseError
from .features import N_ANGLES, AngleVector
from .landmarks import (
    N_LANDMARKS,
    LabeledDataset,
    LandmarkFrame,
    SentenceClass,
    make_dataset,
    validate_frame,
)
from .pca import FeatureMatrix

LANDMARK_HEADER = ["frame_id", "label"] + [
    f"{axis}{i}" for i in range(N_LANDMARKS) for axis in ("x", "y")
]
ANGLE_HEADER = ["frame_id", "label"] + [f"a{i}" for i in range(1, N_ANGLES + 1)]

# 12 significant digits can round pi up past itself; tolerate that much
_ANGLE_MAX = math.pi + 1e-9


def _parse_label(text: str, line_number: int) -> Optional[SentenceClass]:
    if text == "":
        return None
    try:
        return SentenceClass.from_string(text)
    except ValueError as e:
        raise RowParseError(line_number, str(e)) from None


def _parse_float(text: str, line_number: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise RowParseError(line_number, f"column {column}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise RowParseError(line_number, f"column {column}: non-finite value {text!r}")
    return value


def _open_reader(path: str, expected_header: List[str]):
    if not os.path.exists(path):
        raise MissingFile(f"no such file: {path}")
    fh = open(path, newline="", encoding="utf-8")
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        fh.close()
        raise MalformedHeader(f"{path}: empty file, header row required") from None
    if header != expected_header:
        fh.close()
        raise MalformedHeader(
            f"{path}: bad header; expected {len(expected_header)} columns "
            f"starting {expected_header[:3]}, got {header[:3]} ({len(header)} columns)"
        )
    return fh, reader


def read_landmark_csv(path: str) -> LabeledDataset:
    """One LandmarkFrame per data row; invalid rows fail with line numbers."""
    fh, reader = _open_reader(path, LANDMARK_HEADER)
    frames = []
    with fh:
        for line_number, row in enumerate(reader, start=2):
            if len(row) != len(LANDMARK_HEADER):
                raise RowParseError(
                    line_number, f"expected {len(LANDMARK_HEADER)} columns, got {len(row)}"
                )
            label = _parse_label(row[1], line_number)
            coords = [
                _parse_float(v, line_number, LANDMARK_HEADER[2 + j])
                for j, v in enumerate(row[2:])
            ]
            frame = LandmarkFrame(row[0], np.array(coords).reshape(N_LANDMARKS, 2), label)
            frames.append(validate_frame(frame))
    return make_dataset(frames)


def write_landmark_csv(path: str, data: LabeledDataset) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(LANDMARK_HEADER)
        for frame in data:
            label = "" if frame.label is None else frame.label.name
            writer.writerow(
                [frame.frame_id, label] + [f"{v:.12g}" for v in frame.points.ravel()]
            )


def write_angle_csv(
    path: str, rows: Sequence[Tuple[str, Optional[SentenceClass], AngleVector]]
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ANGLE_HEADER)
        for frame_id, label, vec in rows:
            writer.writerow(
                [frame_id, "" if label is None else label.name]
                + [f"{a:.12g}" for a in vec.angles]
            )


def read_angle_csv(path: str) -> FeatureMatrix:
    """Symmetric with write_angle_csv; angles outside [0, pi] are rejected."""
    fh, reader = _open_reader(path, ANGLE_HEADER)
    rows, labels, ids = [], [], []
    with fh:
        for line_number, row in enumerate(reader, start=2):
            if len(row) != len(ANGLE_HEADER):
                raise RowParseError(
                    line_number, f"expected {len(ANGLE_HEADER)} columns, got {len(row)}"
                )
            angles = []
            for j, v in enumerate(row[2:]):
                a = _parse_float(v, line_number, ANGLE_HEADER[2 + j])
                if not 0.0 <= a <= _ANGLE_MAX:
                    raise RowParseError(
                        line_number, f"column {ANGLE_HEADER[2 + j]}: angle {a} outside [0, pi]"
                    )
                angles.append(min(a, math.pi))
            ids.append(row[0])
            labels.append(_parse_label(row[1], line_number))
            rows.append(angles)
    return FeatureMatrix(
        np.array(rows, dtype=np.float64).reshape(len(rows), N_ANGLES),
        tuple(labels),
        tuple(ids),
    )
