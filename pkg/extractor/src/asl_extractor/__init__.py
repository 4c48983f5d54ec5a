"""Facial-landmark extraction from ASL sentence videos.

Produces the landmark CSV consumed by the classification pipeline:
midpoint-frame selection, frontal-face detection, 68-point landmark
placement, and skip reporting.
"""

from .csv_out import write_landmark_csv, write_skip_report
from .extract import (
    ExtractionRecord,
    FaceBox,
    FaceDetector,
    MeanShapePredictor,
    extract_batch,
    extract_midpoint_landmarks,
    midpoint_frame_index,
)

__version__ = "0.1.0"
