"""Core data types: landmark frames, sentence classes, labeled datasets.

A frame holds the 68 standard facial landmarks in image coordinates
(origin at the top-left, y growing downward). Index 8 is the chin-center
point in this ordering and is the default origin for the angle features.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyDataset, NonFiniteCoordinate, WrongPointCount

N_LANDMARKS = 68
CHIN_INDEX = 8


class SentenceClass(Enum):
    """The two sentence types; AS orders before ST for tie-breaking."""

    AS = 0
    ST = 1

    def __lt__(self, other):
        if isinstance(other, SentenceClass):
            return self.value < other.value
        return NotImplemented

    @classmethod
    def from_string(cls, s: str) -> "SentenceClass":
        try:
            return cls[s]
        except KeyError:
            raise ValueError(f"unknown sentence class {s!r}") from None


CLASS_ORDER = (SentenceClass.AS, SentenceClass.ST)


@dataclass(frozen=True)
class LandmarkFrame:
    """One video frame's 68 landmark points plus identity metadata."""

    frame_id: str
    points: np.ndarray  # shape (68, 2), float64, image pixels
    label: Optional[SentenceClass] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def with_label(self, label: Optional[SentenceClass]) -> "LandmarkFrame":
        return LandmarkFrame(self.frame_id, np.array(self.points), label)


def validate_frame(frame: LandmarkFrame) -> LandmarkFrame:
    """Check the shape and finiteness invariants; returns the frame unchanged."""
    pts = frame.points
    if pts.ndim != 2 or pts.shape != (N_LANDMARKS, 2):
        raise WrongPointCount(
            f"frame {frame.frame_id!r}: expected {N_LANDMARKS} points, "
            f"got shape {pts.shape}"
        )
    if not np.all(np.isfinite(pts)):
        raise NonFiniteCoordinate(f"frame {frame.frame_id!r}: non-finite coordinate")
    return frame


@dataclass(frozen=True)
class LabeledDataset:
    """An ordered collection of labeled frames with unique frame_ids."""

    frames: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        seen = set()
        for f in self.frames:
            if f.frame_id in seen:
                raise ValueError(f"duplicate frame_id {f.frame_id!r}")
            seen.add(f.frame_id)

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    def frame_ids(self) -> list:
        return [f.frame_id for f in self.frames]

    def require_labels(self) -> "LabeledDataset":
        for f in self.frames:
            if f.label is None:
                raise EmptyDataset(f"frame {f.frame_id!r} has no label")
        return self

    def require_nonempty(self, context: str = "operation") -> "LabeledDataset":
        if not self.frames:
            raise EmptyDataset(f"empty dataset passed to {context}")
        return self


def make_dataset(frames: Sequence[LandmarkFrame]) -> LabeledDataset:
    return LabeledDataset(tuple(frames))
