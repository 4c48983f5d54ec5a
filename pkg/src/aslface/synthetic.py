"""Synthetic two-class landmark benchmark.

Generates face-shaped landmark frames for two populations that differ in
brow-to-chin geometry: the AS class carries its brow landmarks (17-26)
raised by a fixed offset. Every frame additionally gets per-point
Gaussian noise and a random similarity transform (small rotation, scale,
translation) as camera nuisance. This stands in for real footage in the
end-to-end acceptance benchmark.
"""

from __future__ import annotations

import numpy as np

from .landmarks import LabeledDataset, LandmarkFrame, SentenceClass, make_dataset

_BROWS = slice(17, 27)


def template_face() -> np.ndarray:
    """A plausible neutral 68-point layout in image coordinates (y down)."""
    pts = np.zeros((68, 2))
    # jaw 0-16, left temple over the chin (index 8) to right temple
    t = np.pi - np.pi * np.arange(17) / 16.0
    pts[0:17, 0] = 100 + 40 * np.cos(t)
    pts[0:17, 1] = 100 + 50 * np.sin(t)
    # brows 17-21 and 22-26, slightly arched
    arc = np.array([2.0, 0.0, -1.0, 0.0, 2.0])
    pts[17:22, 0] = np.linspace(65, 93, 5)
    pts[17:22, 1] = 78 + arc
    pts[22:27, 0] = np.linspace(107, 135, 5)
    pts[22:27, 1] = 78 + arc
    # nose bridge 27-30 and base 31-35
    pts[27:31, 0] = 100
    pts[27:31, 1] = np.linspace(85, 110, 4)
    pts[31:36, 0] = np.linspace(90, 110, 5)
    pts[31:36, 1] = 115
    # eyes 36-41 (left) and 42-47 (right), hexagons
    hexa = np.linspace(0, 2 * np.pi, 6, endpoint=False)
    for start, cx in ((36, 80.0), (42, 120.0)):
        pts[start : start + 6, 0] = cx + 8 * np.cos(hexa)
        pts[start : start + 6, 1] = 90 + 3 * np.sin(hexa)
    # mouth: outer ring 48-59, inner ring 60-67
    outer = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    pts[48:60, 0] = 100 + 18 * np.cos(outer)
    pts[48:60, 1] = 128 + 8 * np.sin(outer)
    inner = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    pts[60:68, 0] = 100 + 10 * np.cos(inner)
    pts[60:68, 1] = 128 + 3 * np.sin(inner)
    return pts


def generate_benchmark(
    n_frames: int = 175,
    seed: int = 7,
    brow_offset: float = 30.0,
    noise: float = 1.0,
) -> LabeledDataset:
    """Balanced AS/ST frames; labels alternate so any prefix stays balanced."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed])))
    base = template_face()
    frames = []
    for i in range(n_frames):
        label = SentenceClass.AS if i % 2 == 0 else SentenceClass.ST
        pts = base.copy()
        if label is SentenceClass.AS:
            pts[_BROWS, 1] -= brow_offset
        pts = pts + rng.normal(0.0, noise, size=pts.shape)

        # camera nuisance: small similarity transform about the centroid
        angle = rng.uniform(-0.02, 0.02)
        scale = rng.uniform(0.9, 1.1)
        shift = rng.uniform(-30.0, 30.0, size=2)
        c, s = np.cos(angle), np.sin(angle)
        centroid = pts.mean(axis=0)
        pts = (pts - centroid) @ np.array([[c, -s], [s, c]]).T * scale + centroid + shift

        frames.append(LandmarkFrame(f"vid{i:04d}", pts, label))
    return make_dataset(frames)
