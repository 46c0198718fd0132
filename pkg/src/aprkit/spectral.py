"""2D DFT core: decomposition into amplitude/phase and recombination.

Conventions used throughout the toolkit:

- An image is a float array of shape ``(H, W)`` or ``(H, W, C)`` with
  ``C`` in ``{1, 3}`` and values in ``[0, 1]``.  All arithmetic is double
  precision; only file I/O quantizes to 8 bits.
- A spectrum is the complex array of per-channel 2D DFT coefficients in
  unshifted layout (DC term at index ``(0, 0)``).
- The forward transform is unnormalized,
  ``F(u, v) = sum_n sum_m x(n, m) * exp(-2j*pi*(u*n/H + v*m/W))``,
  and the inverse carries the ``1/(H*W)`` factor.  This matches the
  numpy.fft default, so the heavy lifting is delegated to numpy.
- Amplitude is the coefficient modulus; phase is the two-argument
  arc-tangent of (imaginary, real) in ``(-pi, pi]``, defined as 0 where
  the modulus is 0 so the polar form is total.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError


class PolarSpectrum(NamedTuple):
    """Amplitude (non-negative) and phase (radians) grids of equal shape."""

    amplitude: np.ndarray
    phase: np.ndarray


def check_image_shape(image: np.ndarray) -> np.ndarray:
    """Validate grid dimensions and channel count; returns a float64 view."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim not in (2, 3):
        raise DimensionError(f"expected a (H, W) or (H, W, C) grid, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"zero-sized grid: shape {arr.shape}")
    if arr.ndim == 3 and arr.shape[2] not in (1, 3):
        raise DimensionError(f"channel count must be 1 or 3, got {arr.shape[2]}")
    return arr


def validate_image(image: np.ndarray) -> np.ndarray:
    """Full image check: shape rules plus finite values in [0, 1]."""
    arr = check_image_shape(image)
    if not np.all(np.isfinite(arr)):
        raise DomainError("image contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise DomainError(
            f"pixel values must lie in [0, 1], got range [{arr.min()}, {arr.max()}]"
        )
    return arr


def forward_dft(image: np.ndarray) -> np.ndarray:
    """Per-channel 2D DFT of an image, DC at index (0, 0)."""
    arr = check_image_shape(image)
    return np.fft.fft2(arr, axes=(0, 1))


def inverse_dft(spectrum: np.ndarray, clamp: bool = True) -> np.ndarray:
    """Real part of the per-channel inverse DFT.

    With ``clamp`` (the default) the result is clipped to the valid pixel
    range ``[0, 1]``; pass ``clamp=False`` to observe out-of-range values,
    e.g. when checking round-trip identities.
    """
    arr = np.asarray(spectrum)
    check_image_shape(arr.real)
    pixels = np.fft.ifft2(arr, axes=(0, 1)).real
    if clamp:
        pixels = np.clip(pixels, 0.0, 1.0)
    return pixels


def decompose(spectrum: np.ndarray) -> PolarSpectrum:
    """Split a complex spectrum into (amplitude, phase).

    Phase is set to exactly 0 wherever the amplitude is exactly 0; any
    phase recombines to the same zero coefficient, and 0 keeps the polar
    representation canonical.
    """
    arr = np.asarray(spectrum, dtype=np.complex128)
    amplitude = np.abs(arr)
    phase = np.arctan2(arr.imag, arr.real)
    phase[amplitude == 0.0] = 0.0
    return PolarSpectrum(amplitude=amplitude, phase=phase)


def recombine(amplitude: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """Rebuild a complex spectrum as ``amplitude * exp(1j * phase)``."""
    amp = np.asarray(amplitude, dtype=np.float64)
    ph = np.asarray(phase, dtype=np.float64)
    if amp.shape != ph.shape:
        raise DimensionError(
            f"amplitude shape {amp.shape} does not match phase shape {ph.shape}"
        )
    if amp.size and amp.min() < 0.0:
        raise DomainError(f"amplitude must be non-negative, min is {amp.min()}")
    return amp * np.exp(1j * ph)


def guard_zero_amplitude(amplitude: np.ndarray) -> np.ndarray:
    """Replace exact zeros with 1 so phase information survives recombination.

    All other entries pass through unchanged; the operation is idempotent.
    """
    amp = np.asarray(amplitude, dtype=np.float64)
    if amp.size and amp.min() < 0.0:
        raise DomainError(f"amplitude must be non-negative, min is {amp.min()}")
    out = amp.copy()
    out[out == 0.0] = 1.0
    return out
