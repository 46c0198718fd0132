"""Amplitude-phase recombination augmentation: pairwise, single-image, and batch.

apr_pair keeps the phase spectrum of its first argument and the
amplitude spectrum of its second; the label always follows the phase
source.  apr_single recombines two independently transformed views of
one image.  Batch mode P pairs each sample with a seeded shuffle of the
batch, mode S runs apr_single per sample, and mode SP composes S then P
under split seeds.

Seeds drive everything through per-sample child streams, so a pool of
workers produces bit-identical output to a serial run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DataError, DimensionError, DomainError
from .ops import apply_chain, sample_chain
from .seeding import (
    TAG_APPLY,
    TAG_CHAIN_A,
    TAG_CHAIN_B,
    TAG_PERMUTATION,
    TAG_STAGE_P,
    TAG_STAGE_S,
    child_seed,
    rng_from,
)
from .spectral import decompose, forward_dft, inverse_dft, recombine, validate_image

MODES = ("P", "S", "SP")


@dataclass(frozen=True)
class AprConfig:
    mode: str = "P"
    apply_probability: float = 1.0
    seed: int = 0
    chain_length_range: tuple[int, int] = (1, 3)

    def __post_init__(self):
        mode = str(self.mode).upper()
        if mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "mode", mode)
        if not 0.0 <= self.apply_probability <= 1.0:
            raise DomainError(f"apply_probability must be in [0,1], got {self.apply_probability}")
        lo, hi = self.chain_length_range
        if lo < 0 or hi < lo:
            raise DomainError(f"invalid chain length range [{lo}, {hi}]")


class LabeledImage(NamedTuple):
    image: np.ndarray
    label: int


def apr_pair(x_i: np.ndarray, x_j: np.ndarray, clamp: bool = True) -> np.ndarray:
    """Recombine the phase of x_i with the amplitude of x_j.

    The output inherits x_i's identity: callers pairing labeled samples
    keep the phase source's label.  No zero-amplitude substitution is
    performed here, so the output's amplitude spectrum equals x_j's
    exactly (pre-clamp).
    """
    x_i = validate_image(x_i)
    x_j = validate_image(x_j)
    if x_i.shape != x_j.shape:
        raise DimensionError(f"shape mismatch: {x_i.shape} vs {x_j.shape}")
    phase = decompose(forward_dft(x_i)).phase
    amplitude = decompose(forward_dft(x_j)).amplitude
    return inverse_dft(recombine(amplitude, phase), clamp=clamp)


def apr_single(x: np.ndarray, chain_a, chain_b, clamp: bool = True) -> np.ndarray:
    """Recombine two augmented views of one image.

    Phase comes from the chain_a view, amplitude from the chain_b view.
    """
    u = apply_chain(x, chain_a)
    v = apply_chain(x, chain_b)
    return apr_pair(u, v, clamp=clamp)


def _check_batch(batch: Sequence[LabeledImage]) -> list[LabeledImage]:
    if len(batch) == 0:
        raise DataError("empty batch")
    checked = []
    shape = None
    for image, label in batch:
        arr = validate_image(image)
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise DimensionError(f"mixed dimensions in batch: {shape} vs {arr.shape}")
        checked.append(LabeledImage(arr, int(label)))
    return checked


def _map_samples(fn, indices, workers):
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, indices))
    return [fn(i) for i in indices]


def apr_batch(
    batch: Sequence[LabeledImage],
    config: AprConfig,
    permutation: Sequence[int] | None = None,
    workers: int | None = None,
    clamp: bool = True,
) -> list[LabeledImage]:
    """Apply the configured recombination mode across a batch.

    Mode P draws a seeded permutation pi and pairs sample i with sample
    pi[i]; a permutation can be injected for tests.  Each sample is
    processed with probability apply_probability, decided on its own
    child stream, so the result does not depend on worker count or
    ordering.  Labels follow the phase source, which is always sample i.
    """
    samples = _check_batch(batch)
    n = len(samples)

    if config.mode == "SP":
        stage_s = replace(config, mode="S", seed=child_seed(config.seed, TAG_STAGE_S))
        stage_p = replace(config, mode="P", seed=child_seed(config.seed, TAG_STAGE_P))
        # the S output is a real image batch, so it clamps; only the final
        # stage exposes the pre-clamp values
        mid = apr_batch(samples, stage_s, workers=workers, clamp=True)
        return apr_batch(mid, stage_p, permutation=permutation, workers=workers, clamp=clamp)

    if config.mode == "P":
        if permutation is None:
            perm = rng_from(config.seed, TAG_PERMUTATION).permutation(n)
        else:
            perm = np.asarray(permutation, dtype=np.int64)
            if sorted(perm.tolist()) != list(range(n)):
                raise DataError(f"injected permutation is not a permutation of 0..{n - 1}")

        def one(i):
            if rng_from(config.seed, TAG_APPLY, i).random() >= config.apply_probability:
                return samples[i]
            out = apr_pair(samples[i].image, samples[int(perm[i])].image, clamp=clamp)
            return LabeledImage(out, samples[i].label)

        return _map_samples(one, range(n), workers)

    def one(i):
        if rng_from(config.seed, TAG_APPLY, i).random() >= config.apply_probability:
            return samples[i]
        chain_a = sample_chain(config.chain_length_range, child_seed(config.seed, TAG_CHAIN_A, i))
        chain_b = sample_chain(config.chain_length_range, child_seed(config.seed, TAG_CHAIN_B, i))
        out = apr_single(samples[i].image, chain_a, chain_b, clamp=clamp)
        return LabeledImage(out, samples[i].label)

    return _map_samples(one, range(n), workers)
