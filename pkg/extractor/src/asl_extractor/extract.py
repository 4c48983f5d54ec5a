"""Video/image to landmark-CSV extraction.

For each input the midpoint frame (floor(total/2)) is decoded, a frontal
face is detected with scikit-image's bundled LBP cascade, and a 68-point
shape predictor places the landmarks inside the largest detected face
box. Detection failures become skip records; the batch continues.

The predictor is an external asset. Two backends exist: a dlib
shape-predictor model file (used when dlib is importable and a model
path is given) and a bundled mean-shape asset that maps a canonical
68-point layout onto the detected box. The mean-shape backend keeps the
pipeline runnable where the dlib model cannot be shipped; landmark
ordering (chin at index 8) is identical in both.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Sequence, Tuple

import cv2
import numpy as np
from skimage import data as skimage_data
from skimage.feature import Cascade

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp"}


class ExtractionError(Exception):
    pass


class UnreadableVideo(ExtractionError):
    pass


class NoFaceDetected(ExtractionError):
    pass


@dataclass(frozen=True)
class FaceBox:
    x: float
    y: float
    width: float
    height: float


@dataclass(frozen=True)
class ExtractionRecord:
    video_path: str
    frame_index: int
    success: bool
    points: Optional[np.ndarray]  # (68, 2) image pixels when success
    box: Optional[FaceBox]
    label: Optional[str]
    skip_reason: Optional[str] = None


class MeanShapePredictor:
    """Places a canonical 68-point layout into a detected face box."""

    def __init__(self, asset_path: Optional[str] = None):
        if asset_path is None:
            ref = resources.files("asl_extractor.assets") / "mean_shape_68.json"
            doc = json.loads(ref.read_text(encoding="utf-8"))
        else:
            with open(asset_path, encoding="utf-8") as fh:
                doc = json.load(fh)
        if doc.get("format") != "mean-shape-68":
            raise ExtractionError(f"unsupported predictor asset format {doc.get('format')!r}")
        shape = np.asarray(doc["points"], dtype=np.float64)
        if shape.shape != (68, 2):
            raise ExtractionError(f"asset must contain 68 points, got {shape.shape}")
        self._shape = shape

    def predict(self, frame_bgr: np.ndarray, box: FaceBox) -> np.ndarray:
        scale = np.array([box.width, box.height])
        offset = np.array([box.x, box.y])
        return self._shape * scale + offset


class DlibPredictor:
    """Wraps a dlib 68-point shape-predictor model file."""

    def __init__(self, model_path: str):
        import dlib  # optional dependency

        self._predictor = dlib.shape_predictor(model_path)
        self._dlib = dlib

    def predict(self, frame_bgr: np.ndarray, box: FaceBox) -> np.ndarray:
        rect = self._dlib.rectangle(
            int(box.x), int(box.y), int(box.x + box.width), int(box.y + box.height)
        )
        gray = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2GRAY)
        shape = self._predictor(gray, rect)
        return np.array([[p.x, p.y] for p in shape.parts()], dtype=np.float64)


def load_predictor(dlib_model: Optional[str] = None, mean_shape_asset: Optional[str] = None):
    if dlib_model is not None:
        return DlibPredictor(dlib_model)
    return MeanShapePredictor(mean_shape_asset)


class FaceDetector:
    """Frontal-face detection via the bundled LBP cascade."""

    def __init__(self, min_size: Tuple[int, int] = (40, 40)):
        self._cascade = Cascade(skimage_data.lbp_frontal_face_cascade_filename())
        self._min_size = min_size

    def detect_largest(self, frame_bgr: np.ndarray) -> Optional[FaceBox]:
        rgb = frame_bgr[..., ::-1]
        max_side = max(frame_bgr.shape[0], frame_bgr.shape[1])
        found = self._cascade.detect_multi_scale(
            img=rgb,
            scale_factor=1.2,
            step_ratio=1,
            min_size=self._min_size,
            max_size=(max_side, max_side),
        )
        if not found:
            return None
        best = max(found, key=lambda d: d["width"] * d["height"])
        return FaceBox(float(best["c"]), float(best["r"]), float(best["width"]), float(best["height"]))


def midpoint_frame_index(total_frames: int) -> int:
    return total_frames // 2


def read_midpoint_frame(path: str) -> Tuple[np.ndarray, int]:
    """Decode the midpoint frame of a video, or an image as a 1-frame video."""
    if os.path.splitext(path)[1].lower() in IMAGE_SUFFIXES:
        frame = cv2.imread(path)
        if frame is None:
            raise UnreadableVideo(f"cannot read image {path}")
        return frame, 0
    capture = cv2.VideoCapture(path)
    if not capture.isOpened():
        raise UnreadableVideo(f"cannot open video {path}")
    try:
        total = int(capture.get(cv2.CAP_PROP_FRAME_COUNT))
        if total <= 0:
            raise UnreadableVideo(f"no frames in {path}")
        index = midpoint_frame_index(total)
        capture.set(cv2.CAP_PROP_POS_FRAMES, index)
        ok, frame = capture.read()
        if not ok:
            raise UnreadableVideo(f"cannot decode frame {index} of {path}")
        return frame, index
    finally:
        capture.release()


def extract_midpoint_landmarks(
    path: str,
    detector: FaceDetector,
    predictor,
    label: Optional[str] = None,
) -> ExtractionRecord:
    """One record per input; detection failure yields a skip record."""
    try:
        frame, index = read_midpoint_frame(path)
    except UnreadableVideo as e:
        return ExtractionRecord(path, -1, False, None, None, label, skip_reason=str(e))
    box = detector.detect_largest(frame)
    if box is None:
        return ExtractionRecord(path, index, False, None, None, label, skip_reason="no face detected")
    points = predictor.predict(frame, box)
    return ExtractionRecord(path, index, True, points, box, label)


def extract_batch(
    paths: Sequence[str],
    labels: Optional[dict] = None,
    detector: Optional[FaceDetector] = None,
    predictor=None,
) -> List[ExtractionRecord]:
    detector = detector or FaceDetector()
    predictor = predictor or load_predictor()
    labels = labels or {}
    records = []
    for path in paths:
        video_id = os.path.splitext(os.path.basename(path))[0]
        records.append(
            extract_midpoint_landmarks(path, detector, predictor, labels.get(video_id))
        )
    return records
