"""Fourier-basis perturbations and error-heatmap aggregation.

A basis image is the real spatial pattern of a single frequency pair:
unit mass at offset (i, j) plus its conjugate partner at (-i, -j),
inverse transformed and rescaled to a requested L2 norm.  Offsets index
from DC, signed, and are folded onto the grid mod its size, so the same
(i, j) means the same angular frequency at every image size that can
represent it.

Error rates over perturbed datasets aggregate into a 33 x 33 heatmap
covering |i|, |j| <= 16 with (0, 0) at the center cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DataError, DimensionError, DomainError
from .seeding import TAG_SIGN, rng_from
from .spectral import validate_image

MAX_OFFSET = 16
HEATMAP_SIDE = 2 * MAX_OFFSET + 1


@dataclass(frozen=True)
class FourierBasisImage:
    i: int
    j: int
    image: np.ndarray = field(repr=False)
    l2_norm: float


def fourier_basis(height: int, width: int, i: int, j: int, norm: float) -> FourierBasisImage:
    """Real cosine pattern of frequency offset (i, j), scaled to the given L2 norm."""
    if height <= 0 or width <= 0:
        raise DimensionError(f"grid dimensions must be positive, got {height}x{width}")
    if abs(i) > MAX_OFFSET or abs(j) > MAX_OFFSET:
        raise DomainError(f"frequency offsets limited to |i|,|j| <= {MAX_OFFSET}, got ({i}, {j})")
    if not norm > 0:
        raise DomainError(f"norm must be positive, got {norm}")
    spectrum = np.zeros((height, width), dtype=np.complex128)
    spectrum[i % height, j % width] += 1.0
    spectrum[(-i) % height, (-j) % width] += 1.0
    pattern = np.fft.ifft2(spectrum).real
    pattern = pattern * (norm / np.linalg.norm(pattern))
    pattern.setflags(write=False)
    return FourierBasisImage(i=int(i), j=int(j), image=pattern, l2_norm=float(norm))


def perturb_dataset(images: Sequence[np.ndarray], basis: FourierBasisImage, sign_seed: int) -> list[np.ndarray]:
    """Add the basis pattern, with a random per-image sign, to every image; clamp to [0,1].

    Signs are drawn once from the seed in index order, so the result is
    reproducible and order-dependent only through that stream.
    """
    rng = rng_from(sign_seed, TAG_SIGN)
    signs = rng.integers(0, 2, size=len(images)) * 2 - 1
    out = []
    for sign, image in zip(signs, images):
        arr = validate_image(image)
        if arr.shape[:2] != basis.image.shape:
            raise DimensionError(
                f"image {arr.shape[:2]} does not match basis {basis.image.shape}"
            )
        delta = basis.image if arr.ndim == 2 else basis.image[:, :, None]
        out.append(np.clip(arr + sign * delta, 0.0, 1.0))
    return out


@dataclass(frozen=True)
class HeatmapResult:
    grid: np.ndarray = field(repr=False)
    missing: tuple[tuple[int, int], ...]

    @property
    def complete(self) -> bool:
        return not self.missing


def aggregate_heatmap(records: Sequence[tuple[int, int, int, int]]) -> HeatmapResult:
    """Fold (i, j, n_total, n_wrong) records into the 33 x 33 error-rate grid.

    Cell (i + 16, j + 16) holds n_wrong / n_total.  Cells with no record
    stay 0 and are listed in the missing report.
    """
    grid = np.zeros((HEATMAP_SIDE, HEATMAP_SIDE), dtype=np.float64)
    seen = set()
    for i, j, n_total, n_wrong in records:
        if abs(i) > MAX_OFFSET or abs(j) > MAX_OFFSET:
            raise DomainError(f"heatmap cell ({i}, {j}) out of range")
        if (i, j) in seen:
            raise DataError(f"duplicate heatmap record for ({i}, {j})")
        if n_total <= 0 or not 0 <= n_wrong <= n_total:
            raise DataError(f"inconsistent counts at ({i}, {j}): {n_wrong}/{n_total}")
        seen.add((i, j))
        grid[i + MAX_OFFSET, j + MAX_OFFSET] = n_wrong / n_total
    missing = tuple(
        (i, j)
        for i in range(-MAX_OFFSET, MAX_OFFSET + 1)
        for j in range(-MAX_OFFSET, MAX_OFFSET + 1)
        if (i, j) not in seen
    )
    grid.setflags(write=False)
    return HeatmapResult(grid=grid, missing=missing)
