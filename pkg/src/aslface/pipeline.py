"""Pipeline orchestration: split, train, predict, evaluate, manifests.

The training path is augment -> angles -> PCA fit -> project -> forest
fit, with the augmented frame ids recorded in the bundle's training
manifest so evaluation can reject any train/test overlap. A RunManifest
captures everything needed to reproduce a training run byte-exactly:
seeds, configs, k, origin index, and the input file's SHA-256.
"""

from __future__ import annotations

import hashlib
import json
from typing import Dict, List, Optional, Tuple

import numpy as np

from .augmentation import AugmentationConfig, augment_dataset
from .errors import ClassAbsent, IoError
from .features import OriginIndex, angles_from_frame
from .forest import ForestConfig, ForestModel, predict, predict_proba, train_forest
from .landmarks import CLASS_ORDER, LabeledDataset, LandmarkFrame, SentenceClass, make_dataset
from .model_io import ModelBundle
from .pca import FeatureMatrix, fit_pca, transform

DEFAULT_K = 4


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def split_dataset(
    data: LabeledDataset, train_fraction: float = 0.7, seed: int = 0
) -> Tuple[LabeledDataset, LabeledDataset]:
    """Stratified random split; train gets floor(n * fraction) frames total.

    Per-class training counts are allocated by largest remainder so the
    total matches the floor exactly (175 at 0.7 -> 122/53).
    """
    data.require_nonempty("split").require_labels()
    if not 0.0 < train_fraction <= 1.0:
        raise ValueError(f"train_fraction {train_fraction} outside (0, 1]")
    by_class: Dict[SentenceClass, List[LandmarkFrame]] = {c: [] for c in CLASS_ORDER}
    for frame in data:
        by_class[frame.label].append(frame)
    for cls in CLASS_ORDER:
        if not by_class[cls]:
            raise ClassAbsent(f"class {cls.name} has no frames; cannot stratify")

    target_total = int(np.floor(len(data) * train_fraction))
    quotas = {c: len(by_class[c]) * train_fraction for c in CLASS_ORDER}
    take = {c: int(np.floor(quotas[c])) for c in CLASS_ORDER}
    remainder = target_total - sum(take.values())
    # distribute leftovers by largest fractional part, class order breaking ties
    for cls, _ in sorted(
        ((c, quotas[c] - take[c]) for c in CLASS_ORDER), key=lambda cf: (-cf[1], cf[0].value)
    ):
        if remainder <= 0:
            break
        take[cls] += 1
        remainder -= 1

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed])))
    train, test = [], []
    for cls in CLASS_ORDER:
        frames = by_class[cls]
        perm = rng.permutation(len(frames))
        chosen = set(perm[: take[cls]].tolist())
        for i, frame in enumerate(frames):
            (train if i in chosen else test).append(frame)
    # preserve the input ordering within each half
    order = {f.frame_id: i for i, f in enumerate(data)}
    train.sort(key=lambda f: order[f.frame_id])
    test.sort(key=lambda f: order[f.frame_id])
    return make_dataset(train), make_dataset(test)


def extract_features(
    data: LabeledDataset, origin: OriginIndex = OriginIndex(), strict: bool = False
) -> FeatureMatrix:
    vectors = [angles_from_frame(f, origin, strict=strict) for f in data]
    return FeatureMatrix.from_angle_vectors(vectors, [f.label for f in data])


def train_pipeline(
    train: LabeledDataset,
    k: int = DEFAULT_K,
    origin: OriginIndex = OriginIndex(),
    aug_config: AugmentationConfig = AugmentationConfig(),
    forest_config: ForestConfig = ForestConfig(),
    strict_degenerate: bool = False,
) -> ModelBundle:
    """Augment (training data only), extract angles, fit PCA, fit forest."""
    train.require_nonempty("train").require_labels()
    augmented = augment_dataset(train, aug_config)
    fm = extract_features(augmented, origin, strict=strict_degenerate)
    pca_model = fit_pca(fm, k)
    z = transform(pca_model, fm.rows)
    forest_model = train_forest(z, fm.labels, forest_config)
    return ModelBundle(
        pca=pca_model,
        forest=forest_model,
        origin=origin,
        training_manifest=tuple(augmented.frame_ids()),
    )


def predict_frames(
    bundle: ModelBundle, data: LabeledDataset, strict_degenerate: bool = False
) -> List[Tuple[str, SentenceClass, Tuple[float, float]]]:
    out = []
    for frame in data:
        vec = angles_from_frame(frame, bundle.origin, strict=strict_degenerate)
        z = transform(bundle.pca, vec.angles)
        out.append((frame.frame_id, predict(bundle.forest, z), predict_proba(bundle.forest, z)))
    return out


def build_run_manifest(
    input_path: str,
    k: int,
    origin: OriginIndex,
    aug_config: AugmentationConfig,
    forest_config: ForestConfig,
    train_fraction: Optional[float] = None,
    split_seed: Optional[int] = None,
) -> dict:
    return {
        "input": {"path": input_path, "sha256": sha256_file(input_path)},
        "k": k,
        "origin_index": origin.index,
        "train_fraction": train_fraction,
        "split_seed": split_seed,
        "split_stratified": True,
        "augmentation": {
            "rotation_range": aug_config.rotation_range,
            "shift_range": aug_config.shift_range,
            "scale_range": aug_config.scale_range,
            "copies_per_frame": aug_config.copies_per_frame,
            "seed": aug_config.seed,
        },
        "forest": {
            "n_trees": forest_config.n_trees,
            "max_depth": forest_config.max_depth,
            "min_samples_split": forest_config.min_samples_split,
            "max_features": forest_config.max_features,
            "seed": forest_config.seed,
            "bootstrap": forest_config.bootstrap,
        },
    }


def configs_from_manifest(manifest: dict) -> Tuple[int, OriginIndex, AugmentationConfig, ForestConfig]:
    return (
        int(manifest["k"]),
        OriginIndex(int(manifest["origin_index"])),
        AugmentationConfig(**manifest["augmentation"]),
        ForestConfig(**manifest["forest"]),
    )


def write_run_manifest(path: str, manifest: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=1)
            fh.write("\n")
    except OSError as e:
        raise IoError(f"cannot write manifest {path}: {e}") from e


def read_run_manifest(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise IoError(f"cannot read manifest {path}: {e}") from e
    except ValueError as e:
        raise IoError(f"malformed manifest {path}: {e}") from e
