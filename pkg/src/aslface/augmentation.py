"""Landmark-space data augmentation: rotation, shift, resize.

Each augmented copy applies, in order: a rotation by a uniform angle in
[-rotation_range, +rotation_range] about the landmark centroid, a uniform
scale in [1-scale_range, 1+scale_range] about the same centroid, and a
translation whose components are uniform in [-m, +m] with
m = shift_range * inter-ocular distance.

Randomness comes from numpy's PCG64 generator. Each source frame gets its
own stream seeded by SeedSequence([seed, frame_index]), so results are
reproducible and independent of any parallelization across frames.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .landmarks import LabeledDataset, LandmarkFrame, make_dataset, validate_frame

# eye landmark index ranges in the standard 68-point ordering
_LEFT_EYE = slice(36, 42)
_RIGHT_EYE = slice(42, 48)


@dataclass(frozen=True)
class AugmentationConfig:
    rotation_range: float = 0.26  # radians, ~15 degrees
    shift_range: float = 0.1  # fraction of inter-ocular distance
    scale_range: float = 0.1  # scale factor drawn from [0.9, 1.1]
    copies_per_frame: int = 29  # +1 original = the 30x expansion of 122 -> 3660
    seed: int = 0

    def __post_init__(self):
        if self.rotation_range < 0 or self.shift_range < 0 or self.scale_range < 0:
            raise ValueError("augmentation ranges must be non-negative")
        if not self.scale_range < 1:
            raise ValueError("scale_range must be < 1 so scale factors stay positive")
        if self.copies_per_frame < 1:
            raise ValueError("copies_per_frame must be >= 1")


def interocular_distance(points: np.ndarray) -> float:
    """Distance between the two eye centroids."""
    return float(np.linalg.norm(points[_RIGHT_EYE].mean(axis=0) - points[_LEFT_EYE].mean(axis=0)))


def augment_frame(
    frame: LandmarkFrame,
    config: AugmentationConfig,
    rng: np.random.Generator,
    copy_index: int = 0,
) -> LandmarkFrame:
    """One randomized affine copy of a frame; label preserved."""
    validate_frame(frame)
    pts = frame.points
    centroid = pts.mean(axis=0)

    # draw order is part of the determinism contract
    angle = rng.uniform(-config.rotation_range, config.rotation_range)
    scale = rng.uniform(1.0 - config.scale_range, 1.0 + config.scale_range)
    max_shift = config.shift_range * interocular_distance(pts)
    shift = rng.uniform(-max_shift, max_shift, size=2)

    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    out = (pts - centroid) @ rot.T * scale + centroid + shift
    return LandmarkFrame(f"{frame.frame_id}-aug{copy_index}", out, frame.label)


def augment_dataset(data: LabeledDataset, config: AugmentationConfig) -> LabeledDataset:
    """Originals plus copies_per_frame variants per frame, deterministically.

    Output order is original, its copies, next original, ... so the result
    has len(data) * (1 + copies_per_frame) frames.
    """
    data.require_nonempty("augment_dataset")
    out = []
    for frame_index, frame in enumerate(data):
        out.append(frame)
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([config.seed, frame_index]))
        )
        for j in range(config.copies_per_frame):
            out.append(augment_frame(frame, config, rng, copy_index=j))
    return make_dataset(out)
