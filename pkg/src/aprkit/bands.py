"""Radial frequency-band masks and band-limited recombination.

Masks live in centered (shifted) spectrum layout: after ``fftshift`` the DC
term sits at cell ``(H//2, W//2)`` and a cell belongs to a band when its
Euclidean distance from that cell falls in ``[r_lo, r_hi)``.  The interval
is half-open except when ``r_hi`` reaches the grid corner, where it closes
so the corner cells are captured; with that rule the three standard bands
partition the grid exactly.  For a 32x32 grid the standard radii are
``[0, 8)``, ``[8, 16)`` and ``[16, 16*sqrt(2)]`` and the corner distance is
exactly ``16*sqrt(2)``.

Grids handed to :func:`extract_band` are in unshifted layout (DC at
``(0, 0)``); the mask is unshifted internally so results stay directly
recombinable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError
from .spectral import (
    check_image_shape,
    decompose,
    forward_dft,
    guard_zero_amplitude,
    inverse_dft,
    recombine,
)

# Slack absorbing float rounding when r_hi is meant to hit the corner.
_BOUNDARY_EPS = 1e-9


def corner_radius(height: int, width: int) -> float:
    """Largest centered distance on the grid (attained at cell (0, 0))."""
    return float(np.hypot(height // 2, width // 2))


def _distance_grid(height: int, width: int) -> np.ndarray:
    rows = np.arange(height) - height // 2
    cols = np.arange(width) - width // 2
    return np.hypot(rows[:, None], cols[None, :])


@dataclass(frozen=True)
class BandMask:
    """Boolean radial selector in centered layout."""

    height: int
    width: int
    r_lo: float
    r_hi: float
    selected: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.selected.sum())


def band_mask(height: int, width: int, r_lo: float, r_hi: float) -> BandMask:
    """Build the mask selecting distances in ``[r_lo, r_hi)``.

    The upper boundary closes automatically when ``r_hi`` reaches the
    corner distance, so an outermost band picks up the corner cells.
    """
    if height <= 0 or width <= 0:
        raise DimensionError(f"grid dimensions must be positive, got {height}x{width}")
    if r_lo < 0:
        raise DomainError(f"r_lo must be non-negative, got {r_lo}")
    if r_hi <= r_lo:
        raise DomainError(f"need r_hi > r_lo, got [{r_lo}, {r_hi})")
    dist = _distance_grid(height, width)
    if r_hi >= corner_radius(height, width) - _BOUNDARY_EPS:
        selected = (dist >= r_lo) & (dist <= r_hi + _BOUNDARY_EPS)
    else:
        selected = (dist >= r_lo) & (dist < r_hi)
    selected = selected.copy()
    selected.setflags(write=False)
    return BandMask(height=height, width=width, r_lo=float(r_lo), r_hi=float(r_hi), selected=selected)


class Band(enum.Enum):
    """Named radial bands; radii scale with grid size from the 32x32 reference."""

    LOW = "low"
    INTERMEDIATE = "intermediate"
    HIGH = "high"
    FULL = "full"

    def radii(self, height: int, width: int) -> tuple[float, float]:
        side = min(height, width)
        outer = corner_radius(height, width)
        if self is Band.LOW:
            return 0.0, side / 4.0
        if self is Band.INTERMEDIATE:
            return side / 4.0, side / 2.0
        if self is Band.HIGH:
            # only a 3x3 grid trips this: inner radius 1.5 > corner sqrt(2)
            if side / 2.0 >= outer:
                raise DomainError(
                    f"no room for a high annulus at {height}x{width}: "
                    f"inner radius {side / 2.0} reaches past the corner {outer:.4f}"
                )
            return side / 2.0, outer
        return 0.0, outer

    def mask(self, height: int, width: int) -> BandMask:
        r_lo, r_hi = self.radii(height, width)
        return band_mask(height, width, r_lo, r_hi)


def extract_band(polar, mask: BandMask, part: str) -> np.ndarray:
    """Zero out everything outside ``mask`` on the chosen polar part.

    ``part`` selects ``"amplitude"`` or ``"phase"``.  The input grids are
    unshifted; the centered mask is mapped back with ``ifftshift`` before
    it is applied.
    """
    if part not in ("amplitude", "phase"):
        raise DomainError(f"part must be 'amplitude' or 'phase', got {part!r}")
    grid = np.asarray(getattr(polar, part), dtype=np.float64)
    return apply_mask(grid, mask)


def apply_mask(grid: np.ndarray, mask: BandMask) -> np.ndarray:
    """Multiply an unshifted grid by the (unshifted) mask, broadcasting channels."""
    grid = check_image_shape(grid)
    if grid.shape[:2] != (mask.height, mask.width):
        raise DimensionError(
            f"grid shape {grid.shape[:2]} does not match mask {mask.height}x{mask.width}"
        )
    keep = np.fft.ifftshift(mask.selected)
    if grid.ndim == 3:
        keep = keep[:, :, None]
    return grid * keep


def compose_band_pair(
    amp_src: np.ndarray,
    amp_band: Band,
    phase_src: np.ndarray,
    phase_band: Band,
    clamp: bool = True,
) -> np.ndarray:
    """Recombine band-limited amplitude of one image with band-limited phase of another.

    The amplitude band passes through the zero-amplitude guard after
    masking so phase structure survives even where the amplitude was
    zeroed out.  All 16 combinations of the four named bands on the two
    sources are reachable.
    """
    amp_src = check_image_shape(amp_src)
    phase_src = check_image_shape(phase_src)
    if amp_src.shape != phase_src.shape:
        raise DimensionError(
            f"source shapes differ: {amp_src.shape} vs {phase_src.shape}"
        )
    h, w = amp_src.shape[:2]
    amp_polar = decompose(forward_dft(amp_src))
    phase_polar = decompose(forward_dft(phase_src))
    amplitude = guard_zero_amplitude(extract_band(amp_polar, amp_band.mask(h, w), "amplitude"))
    phase = extract_band(phase_polar, phase_band.mask(h, w), "phase")
    return inverse_dft(recombine(amplitude, phase), clamp=clamp)
