"""Array-level bindings for the recombination augmentations.

Training loops usually hold minibatches as channels-first float buffers.
This package adapts that layout to the image-per-sample aprkit API
without changing any numbers: for the same inputs, mode, and seed the
outputs are bitwise identical to calling the core on the equivalent
channels-last images.

An ArrayBatch is a ``(batch, channels, height, width)`` float64 buffer
with values in [0, 1] plus one integer label per sample.  Buffers cross
the boundary as transpose views where numpy allows it; stacking the
per-sample results back into one buffer is the single copy out.

Only the augmentation entry points are bound.  Metrics, file handling,
and the command line stay in the core package.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from aprkit import AprConfig, LabeledImage, __version__ as CORE_VERSION, apr_batch, apr_pair
from aprkit.errors import DataError, DimensionError
from aprkit.seeding import (
    TAG_APPLY,
    TAG_BATCH,
    TAG_CHAIN_A,
    TAG_CHAIN_B,
    TAG_PERMUTATION,
    TAG_SIGN,
    TAG_STAGE_P,
    TAG_STAGE_S,
    child_seed,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayBatch",
    "CORE_VERSION",
    "TAG_APPLY",
    "TAG_BATCH",
    "TAG_CHAIN_A",
    "TAG_CHAIN_B",
    "TAG_PERMUTATION",
    "TAG_SIGN",
    "TAG_STAGE_P",
    "TAG_STAGE_S",
    "__version__",
    "array_batch",
    "bind_apr_batch",
    "bind_apr_pair",
    "child_seed",
]


class ArrayBatch(NamedTuple):
    """Channels-first minibatch: (batch, channels, height, width) plus labels."""

    data: np.ndarray
    labels: tuple[int, ...]


def array_batch(data, labels) -> ArrayBatch:
    """Validate and wrap a channels-first buffer with its labels.

    Already-contiguous float64 input is wrapped as-is, no copy.
    """
    arr = np.ascontiguousarray(data, dtype=np.float64)
    if arr.ndim != 4:
        raise DimensionError(
            f"expected (batch, channels, height, width), got shape {arr.shape}"
        )
    if arr.shape[0] == 0:
        raise DataError("empty batch")
    if arr.shape[1] not in (1, 3):
        raise DimensionError(f"channel count must be 1 or 3, got {arr.shape[1]}")
    if arr.shape[2] == 0 or arr.shape[3] == 0:
        raise DimensionError(f"zero-sized images in batch of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("batch contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise DataError(
            f"values must lie in [0, 1], got range [{arr.min()}, {arr.max()}]"
        )
    label_tuple = tuple(int(v) for v in labels)
    if len(label_tuple) != arr.shape[0]:
        raise DimensionError(
            f"{arr.shape[0]} samples but {len(label_tuple)} labels"
        )
    return ArrayBatch(arr, label_tuple)


def _checked(batch: ArrayBatch) -> ArrayBatch:
    return array_batch(batch.data, batch.labels)


def _to_images(batch: ArrayBatch) -> list[LabeledImage]:
    # (C, H, W) -> (H, W, C) is a transpose view, not a copy
    return [
        LabeledImage(np.moveaxis(sample, 0, 2), label)
        for sample, label in zip(batch.data, batch.labels)
    ]


def _from_images(samples: Sequence[LabeledImage]) -> ArrayBatch:
    data = np.stack([np.moveaxis(s.image, 2, 0) for s in samples])
    return ArrayBatch(np.ascontiguousarray(data), tuple(s.label for s in samples))


def bind_apr_pair(batch_a: ArrayBatch, batch_b: ArrayBatch) -> ArrayBatch:
    """Per-sample phase/amplitude recombination across two aligned batches.

    Sample k of the result keeps the phase and the label of
    ``batch_a[k]`` and takes its amplitude from ``batch_b[k]``.
    """
    a = _checked(batch_a)
    b = _checked(batch_b)
    if a.data.shape != b.data.shape:
        raise DimensionError(
            f"batch shapes differ: {a.data.shape} vs {b.data.shape}"
        )
    mixed = [
        LabeledImage(apr_pair(np.moveaxis(xa, 0, 2), np.moveaxis(xb, 0, 2)), label)
        for xa, xb, label in zip(a.data, b.data, a.labels)
    ]
    return _from_images(mixed)


def bind_apr_batch(batch: ArrayBatch, mode: str, seed: int, prob: float = 1.0) -> ArrayBatch:
    """Seeded minibatch augmentation with core-identical numbers.

    Thin shim over aprkit.apr_batch: the same (inputs, mode, seed, prob)
    produce exactly the bytes the core produces on the channels-last
    views of the samples.  No recomputation happens on this side of the
    boundary, so there is nothing to drift.
    """
    checked = _checked(batch)
    config = AprConfig(mode=mode, apply_probability=prob, seed=seed)
    return _from_images(apr_batch(_to_images(checked), config))
