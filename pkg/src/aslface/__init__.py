"""Facial-landmark sentence-type classification (assertion vs statement).

Chin-relative angle features over the 68 standard facial landmarks,
PCA dimensionality reduction, and a random forest classifier, plus CSV
tooling and a CLI for the full train/predict/evaluate workflow.
"""

from .augmentation import AugmentationConfig, augment_dataset, augment_frame
from .features import AngleVector, OriginIndex, angles_from_frame, to_origin_frame
from .forest import ForestConfig, ForestModel, gini, predict, predict_proba, train_forest
from .landmarks import (
    LabeledDataset,
    LandmarkFrame,
    SentenceClass,
    make_dataset,
    validate_frame,
)
from .metrics import ConfusionMatrix, EvalReport, evaluate
from .model_io import ModelBundle, load_bundle, save_bundle
from .pca import FeatureMatrix, PcaModel, fit_pca, inverse_transform, transform
from .pipeline import split_dataset, train_pipeline

__version__ = "0.1.0"

__all__ = [
    "AngleVector",
    "AugmentationConfig",
    "ConfusionMatrix",
    "EvalReport",
    "FeatureMatrix",
    "ForestConfig",
    "ForestModel",
    "LabeledDataset",
    "LandmarkFrame",
    "ModelBundle",
    "OriginIndex",
    "PcaModel",
    "SentenceClass",
    "angles_from_frame",
    "augment_dataset",
    "augment_frame",
    "evaluate",
    "fit_pca",
    "gini",
    "inverse_transform",
    "load_bundle",
    "make_dataset",
    "predict",
    "predict_proba",
    "save_bundle",
    "split_dataset",
    "to_origin_frame",
    "train_forest",
    "train_pipeline",
    "transform",
    "validate_frame",
]
