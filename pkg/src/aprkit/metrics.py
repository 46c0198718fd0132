"""Corruption and open-set evaluation metrics over prediction records.

All metrics are pure folds over plain sequences: normalized corruption
error and its mean, rank-based AUROC, thresholded CCR/FPR, and the
open-set classification rate as the area under the CCR-vs-FPR sweep.
Probability blending for dual predictors lives here too.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DataError, DimensionError, DomainError
from .io import ScoredRecord, record_from_probs

SEVERITIES = 5


def corruption_error(errors, reference) -> float:
    """Severity-summed error normalized by the reference model's sum."""
    errors = np.asarray(errors, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if errors.shape != (SEVERITIES,) or reference.shape != (SEVERITIES,):
        raise DataError(
            f"expected {SEVERITIES} severities, got {errors.shape} and {reference.shape}"
        )
    denom = float(reference.sum())
    if denom <= 0:
        raise DataError("reference severity sum must be positive")
    return float(errors.sum()) / denom


def mean_corruption_error(ce_values) -> float:
    values = np.asarray(ce_values, dtype=np.float64)
    if values.size == 0:
        raise DataError("no corruption errors to average")
    return float(values.mean())


def auroc(in_scores, out_scores) -> float:
    """Probability a random in-distribution score outranks a random OOD score.

    Ties count half.  Computed by binary search against the sorted OOD
    scores, which is exactly the pairwise comparison count.
    """
    in_scores = np.asarray(in_scores, dtype=np.float64)
    out_scores = np.asarray(out_scores, dtype=np.float64)
    if in_scores.size == 0 or out_scores.size == 0:
        raise DataError("auroc needs scores on both sides")
    out_sorted = np.sort(out_scores)
    below = np.searchsorted(out_sorted, in_scores, side="left")
    below_or_equal = np.searchsorted(out_sorted, in_scores, side="right")
    wins = below + 0.5 * (below_or_equal - below)
    return float(wins.sum() / (in_scores.size * out_scores.size))


def _split_records(records: Sequence[ScoredRecord]):
    id_records = [r for r in records if not r.is_ood]
    ood_records = [r for r in records if r.is_ood]
    if not id_records or not ood_records:
        raise DataError("need at least one in-distribution and one OOD record")
    return id_records, ood_records


def ccr_fpr_at(records: Sequence[ScoredRecord], threshold: float) -> tuple[float, float]:
    """Correct-classification rate over ID and false-positive rate over OOD at one threshold."""
    id_records, ood_records = _split_records(records)
    ccr_hits = sum(1 for r in id_records if r.pred_label == r.true_label and r.score >= threshold)
    fpr_hits = sum(1 for r in ood_records if r.score >= threshold)
    return ccr_hits / len(id_records), fpr_hits / len(ood_records)


def oscr(records: Sequence[ScoredRecord]) -> float:
    """Area under the CCR-vs-FPR curve.

    The threshold sweep runs from above the maximum score down to below
    the minimum, visiting every distinct score.  The endpoints anchor
    the curve at FPR 0 (nothing admitted) and FPR 1 (everything
    admitted, CCR = plain accuracy); the area accumulates by the
    trapezoidal rule along the sweep.
    """
    id_records, ood_records = _split_records(records)
    scores = np.array([r.score for r in records], dtype=np.float64)
    thresholds = [scores.max() + 1.0]
    thresholds.extend(np.unique(scores)[::-1])
    thresholds.append(scores.min() - 1.0)
    area = 0.0
    prev_ccr, prev_fpr = ccr_fpr_at(records, thresholds[0])
    for threshold in thresholds[1:]:
        ccr, fpr = ccr_fpr_at(records, threshold)
        area += (fpr - prev_fpr) * (ccr + prev_ccr) / 2.0
        prev_ccr, prev_fpr = ccr, fpr
    return float(area)


def blend_predictions(p_phase, p_amp, lam: float) -> np.ndarray:
    """Convex combination lam * p_phase + (1 - lam) * p_amp of two probability vectors."""
    p_phase = np.asarray(p_phase, dtype=np.float64)
    p_amp = np.asarray(p_amp, dtype=np.float64)
    if p_phase.shape != p_amp.shape or p_phase.ndim != 1:
        raise DimensionError(f"probability vectors must match, got {p_phase.shape} and {p_amp.shape}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must be in [0,1], got {lam}")
    for name, vec in (("phase", p_phase), ("amplitude", p_amp)):
        if vec.size == 0 or np.any(vec < 0) or abs(vec.sum() - 1.0) > 1e-6:
            raise DataError(f"{name} input is not a probability vector")
    return lam * p_phase + (1.0 - lam) * p_amp


__all__ = [
    "ScoredRecord",
    "record_from_probs",
    "corruption_error",
    "mean_corruption_error",
    "auroc",
    "ccr_fpr_at",
    "oscr",
    "blend_predictions",
]
