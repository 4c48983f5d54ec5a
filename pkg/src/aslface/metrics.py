"""Confusion matrix, per-class TPR/FPR/TNR/FNR, and overall accuracy.

Rates are held as exact rationals built from the integer counts, so the
identities TPR + FNR = 1 and FPR + TNR = 1 hold exactly; a rate whose
denominator is zero is reported as None ("undefined"), never 0 or NaN.
Conversion to floats happens only when rendering or exporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

from .errors import EmptyTestSet, TrainTestOverlap
from .features import OriginIndex, angles_from_frame
from .landmarks import CLASS_ORDER, LabeledDataset, SentenceClass
from . import forest as forest_mod
from . import pca as pca_mod


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 counts indexed (true class, predicted class), order (AS, ST)."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.shape != (2, 2) or np.any(c < 0):
            raise ValueError("confusion matrix must be 2x2 non-negative counts")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassRates:
    tpr: Optional[Fraction]
    fpr: Optional[Fraction]
    tnr: Optional[Fraction]
    fnr: Optional[Fraction]


@dataclass(frozen=True)
class EvalReport:
    confusion: ConfusionMatrix
    per_class: Dict[SentenceClass, ClassRates]
    accuracy: Fraction


def _rate(num: int, den: int) -> Optional[Fraction]:
    return None if den == 0 else Fraction(num, den)


def confusion_from_predictions(
    y_true: Sequence[SentenceClass], y_pred: Sequence[SentenceClass]
) -> ConfusionMatrix:
    if len(y_true) != len(y_pred):
        raise ValueError("prediction/label length mismatch")
    counts = np.zeros((2, 2), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        counts[t.value, p.value] += 1
    return ConfusionMatrix(counts)


def report_from_confusion(cm: ConfusionMatrix) -> EvalReport:
    c = cm.counts
    total = cm.total
    if total == 0:
        raise EmptyTestSet("cannot build a report from zero evaluations")
    per_class = {}
    for cls in CLASS_ORDER:
        i = cls.value
        j = 1 - i
        tp = int(c[i, i])
        fn = int(c[i, j])
        fp = int(c[j, i])
        tn = int(c[j, j])
        per_class[cls] = ClassRates(
            tpr=_rate(tp, tp + fn),
            fpr=_rate(fp, fp + tn),
            tnr=_rate(tn, fp + tn),
            fnr=_rate(fn, tp + fn),
        )
    accuracy = Fraction(int(np.trace(c)), total)
    return EvalReport(cm, per_class, accuracy)


def evaluate(
    model: "forest_mod.ForestModel",
    pca_model: "pca_mod.PcaModel",
    test: LabeledDataset,
    origin: OriginIndex = OriginIndex(),
    training_manifest: Optional[Sequence[str]] = None,
    strict_degenerate: bool = False,
) -> EvalReport:
    """Run features -> PCA -> forest on a labeled test set.

    When a training manifest is supplied, any overlap of frame_ids with it
    is a protocol violation.
    """
    test.require_nonempty("evaluate")
    test.require_labels()
    if training_manifest is not None:
        overlap = set(test.frame_ids()) & set(training_manifest)
        if overlap:
            raise TrainTestOverlap(
                f"{len(overlap)} test frame_id(s) appear in the training manifest, "
                f"e.g. {sorted(overlap)[0]!r}"
            )
    y_true, y_pred = [], []
    for frame in test:
        z = pca_mod.transform(
            pca_model, angles_from_frame(frame, origin, strict=strict_degenerate).angles
        )
        y_true.append(frame.label)
        y_pred.append(forest_mod.predict(model, z))
    return report_from_confusion(confusion_from_predictions(y_true, y_pred))


def render_table(report: EvalReport) -> str:
    """Human-readable table with per-class rate rows and accuracy."""

    def fmt(r: Optional[Fraction]) -> str:
        return "undef" if r is None else f"{float(r):.3f}"

    lines = ["Class  TPR    FPR    TNR    FNR"]
    for cls in CLASS_ORDER:
        r = report.per_class[cls]
        lines.append(
            f"{cls.name:<6} {fmt(r.tpr):<6} {fmt(r.fpr):<6} {fmt(r.tnr):<6} {fmt(r.fnr)}"
        )
    lines.append(f"accuracy: {float(report.accuracy):.3f}")
    c = report.confusion.counts
    lines.append(f"confusion (rows=true AS,ST / cols=pred AS,ST): "
                 f"[[{c[0,0]}, {c[0,1]}], [{c[1,0]}, {c[1,1]}]]")
    return "\n".join(lines)


def _to_float(r: Optional[Fraction]) -> Optional[float]:
    return None if r is None else float(r)


def report_to_dict(report: EvalReport) -> dict:
    """Machine-readable form with full-precision values."""
    return {
        "confusion": report.confusion.counts.tolist(),
        "class_order": [c.name for c in CLASS_ORDER],
        "per_class": {
            cls.name: {
                "TPR": _to_float(report.per_class[cls].tpr),
                "FPR": _to_float(report.per_class[cls].fpr),
                "TNR": _to_float(report.per_class[cls].tnr),
                "FNR": _to_float(report.per_class[cls].fnr),
            }
            for cls in CLASS_ORDER
        },
        "accuracy": float(report.accuracy),
    }
