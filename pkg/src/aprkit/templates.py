"""Template-based reinterpretation of the DFT for square gray images.

For frequency (u, v) on an N x N grid, define the pixelwise angle
theta(n, m) = -2*pi*(u*n + v*m)/N.  Splitting cos(theta) and sin(theta)
into their positive and negative parts gives four non-negative grids;
weighted pixel sums against those grids reproduce the real and
imaginary parts of the DFT coefficient at (u, v), and their
two-argument arc-tangent reproduces the phase.  Color callers pass one
channel at a time.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError
from .spectral import check_image_shape


class TemplateSet(NamedTuple):
    u: int
    v: int
    r_plus: np.ndarray
    r_minus: np.ndarray
    i_plus: np.ndarray
    i_minus: np.ndarray


@lru_cache(maxsize=512)
def templates_at(size: int, u: int, v: int) -> TemplateSet:
    """The four non-negative template grids for frequency (u, v) on an N x N grid."""
    if size <= 0:
        raise DimensionError(f"size must be positive, got {size}")
    if not (0 <= u < size and 0 <= v < size):
        raise DomainError(f"frequency ({u}, {v}) out of range for size {size}")
    n = np.arange(size)
    theta = -2.0 * np.pi * (u * n[:, None] + v * n[None, :]) / size
    cos, sin = np.cos(theta), np.sin(theta)
    grids = [np.maximum(cos, 0.0), np.maximum(-cos, 0.0), np.maximum(sin, 0.0), np.maximum(-sin, 0.0)]
    for grid in grids:
        # cached sets are shared between callers, keep them immutable
        grid.setflags(write=False)
    return TemplateSet(u, v, *grids)


def _check_gray_square(image: np.ndarray) -> np.ndarray:
    arr = check_image_shape(image)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim != 2:
        raise DimensionError(f"templates need a single-channel image, got shape {np.shape(image)}")
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"templates need a square image, got {arr.shape}")
    return arr


def contrast_scores(image: np.ndarray, u: int, v: int) -> tuple[float, float]:
    """Four weighted pixel sums collapsing to the DFT real and imaginary parts at (u, v)."""
    arr = _check_gray_square(image)
    t = templates_at(arr.shape[0], u, v)
    r = float(np.sum(arr * t.r_plus) - np.sum(arr * t.r_minus))
    i = float(np.sum(arr * t.i_plus) - np.sum(arr * t.i_minus))
    return r, i


def phase_via_templates(image: np.ndarray, u: int, v: int) -> float:
    """Phase at (u, v) recovered from the template contrasts alone.

    Agrees with the phase of the direct DFT wherever the amplitude is
    nonzero; at exact zeros the value is atan2(0, 0) = 0 by convention.
    """
    r, i = contrast_scores(image, u, v)
    return float(np.arctan2(i, r))
