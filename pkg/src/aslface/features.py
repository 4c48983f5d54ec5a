"""Chin-relative angle features.

Each landmark i (other than the origin landmark) contributes one angle

    theta_i = arccos((x0 - xi) / sqrt((x0 - xi)^2 + (y0 - yi)^2))

where (x0, y0) is the origin landmark, by default the chin-center point
(index 8). The 67 angles are ordered by ascending landmark index with
the origin skipped. The arccos of a normalized x-displacement is
translation- and uniform-scale-invariant but deliberately insensitive to
the sign of the y-displacement (reflection across the horizontal line
through the origin leaves every angle unchanged); see the tests for
these properties.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLandmark
from .landmarks import CHIN_INDEX, N_LANDMARKS, LandmarkFrame, validate_frame

log = logging.getLogger(__name__)

N_ANGLES = N_LANDMARKS - 1


@dataclass(frozen=True)
class OriginIndex:
    """Landmark index used as the coordinate origin (default: chin center)."""

    index: int = CHIN_INDEX

    def __post_init__(self):
        if not 0 <= self.index < N_LANDMARKS:
            raise ValueError(f"origin index {self.index} out of range 0..67")


@dataclass(frozen=True)
class AngleVector:
    """67 angles in [0, pi], tagged with the source frame id."""

    angles: np.ndarray  # shape (67,), radians
    source_frame_id: str

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64)
        if a.shape != (N_ANGLES,):
            raise ValueError(f"expected {N_ANGLES} angles, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)


def to_origin_frame(frame: LandmarkFrame, origin: OriginIndex = OriginIndex()) -> np.ndarray:
    """Displacements (x0-xi, y0-yi) for every landmark i != origin.

    Returns a (67, 2) array ordered by ascending landmark index.
    """
    validate_frame(frame)
    pts = frame.points
    keep = np.arange(N_LANDMARKS) != origin.index
    return pts[origin.index] - pts[keep]


def angles_from_frame(
    frame: LandmarkFrame,
    origin: OriginIndex = OriginIndex(),
    strict: bool = False,
) -> AngleVector:
    """Apply the angle transform to one frame.

    A landmark coinciding with the origin has no direction; by default it
    gets angle 0.0 and a warning, under ``strict`` it raises
    DegenerateLandmark.
    """
    disp = to_origin_frame(frame, origin)
    dx = disp[:, 0]
    norms = np.sqrt(disp[:, 0] ** 2 + disp[:, 1] ** 2)
    zero = norms == 0.0
    if np.any(zero):
        if strict:
            bad = int(np.flatnonzero(zero)[0])
            raise DegenerateLandmark(
                f"frame {frame.frame_id!r}: landmark coincides with origin "
                f"(feature position {bad})"
            )
        log.warning(
            "frame %r: %d landmark(s) coincide with the origin; emitting angle 0",
            frame.frame_id,
            int(zero.sum()),
        )
    with np.errstate(invalid="ignore"):
        ratio = np.where(zero, 1.0, dx / np.where(zero, 1.0, norms))
    # clamp absorbs |ratio| = 1 + eps from floating-point norms
    theta = np.arccos(np.clip(ratio, -1.0, 1.0))
    return AngleVector(theta, frame.frame_id)
