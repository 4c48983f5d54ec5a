"""Versioned model persistence.

A model bundle (PCA model + forest + origin index + training manifest)
is stored as a single JSON document with an explicit format_version.
Floats are serialized with Python's shortest round-trip repr, so a
save/load cycle preserves every value bit-exactly and retraining from
the same manifest reproduces the file byte-for-byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DimensionMismatch, FormatVersionMismatch, IoError
from .features import OriginIndex
from .forest import ForestConfig, ForestModel, TreeNode
from .pca import PcaModel

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelBundle:
    pca: PcaModel
    forest: ForestModel
    origin: OriginIndex
    training_manifest: Tuple[str, ...]
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.pca.k != self.forest.n_features:
            raise DimensionMismatch(
                f"pca.k={self.pca.k} but forest expects {self.forest.n_features} features"
            )
        object.__setattr__(self, "training_manifest", tuple(self.training_manifest))


def _tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"counts": list(node.class_counts)}
    return {
        "f": node.feature_index,
        "t": node.threshold,
        "counts": list(node.class_counts),
        "l": _tree_to_dict(node.left),
        "r": _tree_to_dict(node.right),
    }


def _tree_from_dict(d: dict) -> TreeNode:
    counts = tuple(d["counts"])
    if "f" not in d:
        return TreeNode(class_counts=counts)
    return TreeNode(
        feature_index=int(d["f"]),
        threshold=float(d["t"]),
        left=_tree_from_dict(d["l"]),
        right=_tree_from_dict(d["r"]),
        class_counts=counts,
    )


def bundle_to_dict(bundle: ModelBundle) -> dict:
    cfg = bundle.forest.config
    return {
        "format_version": bundle.format_version,
        "origin_index": bundle.origin.index,
        "training_manifest": list(bundle.training_manifest),
        "pca": {
            "k": bundle.pca.k,
            "mean": bundle.pca.mean.tolist(),
            "components": bundle.pca.components.tolist(),
            "explained_variance": bundle.pca.explained_variance.tolist(),
        },
        "forest": {
            "n_features": bundle.forest.n_features,
            "config": {
                "n_trees": cfg.n_trees,
                "max_depth": cfg.max_depth,
                "min_samples_split": cfg.min_samples_split,
                "max_features": cfg.max_features,
                "seed": cfg.seed,
                "bootstrap": cfg.bootstrap,
            },
            "trees": [_tree_to_dict(t) for t in bundle.forest.trees],
        },
    }


def bundle_from_dict(d: dict) -> ModelBundle:
    version = d.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"model format_version {version!r}, this build reads {FORMAT_VERSION}"
        )
    p = d["pca"]
    pca = PcaModel(
        mean=np.array(p["mean"], dtype=np.float64),
        components=np.array(p["components"], dtype=np.float64),
        explained_variance=np.array(p["explained_variance"], dtype=np.float64),
        k=int(p["k"]),
    )
    f = d["forest"]
    config = ForestConfig(**f["config"])
    forest = ForestModel(
        tuple(_tree_from_dict(t) for t in f["trees"]),
        config,
        n_features=int(f["n_features"]),
    )
    return ModelBundle(
        pca=pca,
        forest=forest,
        origin=OriginIndex(int(d["origin_index"])),
        training_manifest=tuple(d["training_manifest"]),
    )


def save_bundle(path: str, bundle: ModelBundle) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(bundle_to_dict(bundle), fh, sort_keys=True, indent=1)
            fh.write("\n")
    except OSError as e:
        raise IoError(f"cannot write model file {path}: {e}") from e


def load_bundle(path: str) -> ModelBundle:
    try:
        with open(path, encoding="utf-8") as fh:
            return bundle_from_dict(json.load(fh))
    except OSError as e:
        raise IoError(f"cannot read model file {path}: {e}") from e
    except (KeyError, ValueError, TypeError) as e:
        raise IoError(f"malformed model file {path}: {e}") from e
