"""The nine chain-augmentation operations and random chain sampling.

The op set is AUTOCONTRAST, EQUALIZE, POSTERIZE, ROTATE, SOLARIZE,
SHEAR_X, SHEAR_Y, TRANSLATE_X, TRANSLATE_Y.  Contrast, color,
brightness, sharpness and cutout overlap with the standard corruption
benchmarks and are rejected by the registry, not merely omitted.

Magnitude levels are integers 0..10 with a linear ramp per op; level 0
is the identity for every op.  The ramp endpoints live in
data/transform_ops.json so chains recorded by one version replay
identically in another.  Geometric ops fill exposed regions with 0.5
gray; photometric ops run on the 8-bit quantization of the image and
map back to [0,1].  Sign for rotate/shear/translate comes from the step
seed.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import NamedTuple, Sequence

import numpy as np
from PIL import Image as PILImage
from PIL import ImageOps

from .errors import DomainError
from .io import quantize_to_bytes, unit_from_bytes
from .seeding import rng_from
from .spectral import validate_image

OPS = (
    "AUTOCONTRAST",
    "EQUALIZE",
    "POSTERIZE",
    "ROTATE",
    "SOLARIZE",
    "SHEAR_X",
    "SHEAR_Y",
    "TRANSLATE_X",
    "TRANSLATE_Y",
)

REJECTED_OPS = frozenset(("CONTRAST", "COLOR", "BRIGHTNESS", "SHARPNESS", "CUTOUT"))

LEVEL_MIN = 0
LEVEL_MAX = 10


class ChainStep(NamedTuple):
    op: str
    level: int
    seed: int


@lru_cache(maxsize=1)
def load_registry() -> dict:
    text = resources.files("aprkit.data").joinpath("transform_ops.json").read_text(encoding="utf-8")
    registry = json.loads(text)
    if tuple(sorted(registry["ops"])) != tuple(sorted(OPS)):
        raise DomainError("op registry does not match the fixed nine-op set")
    return registry


def _round_half_up(x: float) -> int:
    # round() is half-to-even; magnitudes need plain half-up
    return int(np.floor(x + 0.5))


def _to_pil(arr: np.ndarray) -> PILImage.Image:
    data = quantize_to_bytes(arr)
    if data.ndim == 3 and data.shape[2] == 1:
        data = data[:, :, 0]
    return PILImage.fromarray(data, "RGB" if data.ndim == 3 else "L")


def _from_pil(im: PILImage.Image, like: np.ndarray) -> np.ndarray:
    out = unit_from_bytes(np.asarray(im))
    if like.ndim == 3 and like.shape[2] == 1:
        out = out[:, :, None]
    return out


def _fill(im: PILImage.Image, fill_byte: int):
    return (fill_byte,) * 3 if im.mode == "RGB" else fill_byte


def check_op(op: str) -> str:
    name = str(op).upper()
    if name in REJECTED_OPS:
        raise DomainError(f"op {name} is excluded: it overlaps with the corruption benchmarks")
    if name not in OPS:
        raise DomainError(f"unknown op {op!r}")
    return name


def apply_op(image: np.ndarray, op: str, level: int, seed: int) -> np.ndarray:
    """Apply one named op at integer level 0..10; level 0 returns the image unchanged."""
    arr = validate_image(image)
    name = check_op(op)
    if not (LEVEL_MIN <= int(level) <= LEVEL_MAX):
        raise DomainError(f"level must be in {LEVEL_MIN}..{LEVEL_MAX}, got {level}")
    level = int(level)
    if level == 0:
        return arr.copy()

    ramp = load_registry()["ops"][name]
    fill_byte = int(load_registry()["fill_byte"])
    frac = level / LEVEL_MAX
    im = _to_pil(arr)
    fill = _fill(im, fill_byte)

    if name == "AUTOCONTRAST":
        im = ImageOps.autocontrast(im)
    elif name == "EQUALIZE":
        im = ImageOps.equalize(im)
    elif name == "POSTERIZE":
        bits = ramp["bits_full"] - _round_half_up((ramp["bits_full"] - ramp["bits_at_max"]) * frac)
        im = ImageOps.posterize(im, bits)
    elif name == "SOLARIZE":
        threshold = ramp["threshold_full"] - _round_half_up((ramp["threshold_full"] - ramp["threshold_at_max"]) * frac)
        im = ImageOps.solarize(im, threshold)
    else:
        sign = 1.0 if rng_from(seed).integers(2) == 0 else -1.0
        if name == "ROTATE":
            im = im.rotate(sign * ramp["max_magnitude"] * frac, resample=PILImage.BILINEAR, fillcolor=fill)
        elif name == "SHEAR_X":
            coeff = sign * ramp["max_magnitude"] * frac
            im = im.transform(im.size, PILImage.AFFINE, (1, coeff, 0, 0, 1, 0), resample=PILImage.BILINEAR, fillcolor=fill)
        elif name == "SHEAR_Y":
            coeff = sign * ramp["max_magnitude"] * frac
            im = im.transform(im.size, PILImage.AFFINE, (1, 0, 0, coeff, 1, 0), resample=PILImage.BILINEAR, fillcolor=fill)
        elif name == "TRANSLATE_X":
            pixels = sign * _round_half_up(ramp["max_fraction"] * im.size[0] * frac)
            im = im.transform(im.size, PILImage.AFFINE, (1, 0, pixels, 0, 1, 0), resample=PILImage.BILINEAR, fillcolor=fill)
        else:
            pixels = sign * _round_half_up(ramp["max_fraction"] * im.size[1] * frac)
            im = im.transform(im.size, PILImage.AFFINE, (1, 0, 0, 0, 1, pixels), resample=PILImage.BILINEAR, fillcolor=fill)

    return _from_pil(im, arr)


def apply_chain(image: np.ndarray, chain: Sequence[ChainStep]) -> np.ndarray:
    """Left-to-right composition of apply_op; the empty chain is the identity."""
    out = validate_image(image).copy()
    for step in chain:
        out = apply_op(out, step.op, step.level, step.seed)
    return out


def sample_chain(length_range: tuple[int, int], seed: int) -> tuple[ChainStep, ...]:
    """Draw a random chain: uniform length in the range, uniform ops and levels.

    Deterministic in seed.  Step seeds are drawn from the same stream so
    the whole chain replays from the one argument.
    """
    lo, hi = int(length_range[0]), int(length_range[1])
    if lo < 0 or hi < lo:
        raise DomainError(f"invalid chain length range [{lo}, {hi}]")
    rng = rng_from(seed)
    length = int(rng.integers(lo, hi + 1))
    steps = []
    for _ in range(length):
        op = OPS[int(rng.integers(len(OPS)))]
        level = int(rng.integers(LEVEL_MIN, LEVEL_MAX + 1))
        step_seed = int(rng.integers(0, 2**63))
        steps.append(ChainStep(op, level, step_seed))
    return tuple(steps)
