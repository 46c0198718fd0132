"""Cross-boundary checks: the bindings must match the core bit for bit."""

import numpy as np
import pytest

import aprkit
from aprkit import AprConfig, LabeledImage, apr_batch, apr_pair
from aprkit.cli import main as cli_main
from aprkit.errors import DataError, DimensionError, DomainError
from aprkit.io import quantize_to_bytes, read_image, write_image
from aprkit.seeding import TAG_STAGE_P, TAG_STAGE_S

from aprbind import (
    CORE_VERSION,
    ArrayBatch,
    __version__,
    array_batch,
    bind_apr_batch,
    bind_apr_pair,
    child_seed,
)


def rand_batch(rng, n, channels, size):
    data = rng.random((n, channels, size, size))
    return array_batch(data, [rng.integers(0, 10) for _ in range(n)])


def core_equivalent(batch):
    """The channels-last view of a batch, as the core's labeled samples."""
    return [
        LabeledImage(np.moveaxis(sample, 0, 2), label)
        for sample, label in zip(batch.data, batch.labels)
    ]


def test_array_batch_wraps_without_copy():
    arr = np.ascontiguousarray(np.random.default_rng(0).random((2, 3, 8, 8)))
    batch = array_batch(arr, [0, 1])
    assert batch.data is arr
    assert batch.labels == (0, 1)


def test_array_batch_validation():
    good = np.zeros((2, 3, 4, 4))
    with pytest.raises(DataError):
        array_batch(np.zeros((0, 3, 4, 4)), [])
    with pytest.raises(DimensionError):
        array_batch(np.zeros((2, 2, 4, 4)), [0, 1])
    with pytest.raises(DimensionError):
        array_batch(np.zeros((2, 3, 4)), [0, 1])
    with pytest.raises(DimensionError):
        array_batch(good, [0])
    with pytest.raises(DataError):
        array_batch(good - 0.5, [0, 1])
    with pytest.raises(DataError):
        array_batch(np.full((1, 1, 2, 2), np.nan), [0])


def test_pair_self_identity():
    rng = np.random.default_rng(1)
    batch = rand_batch(rng, 4, 3, 12)
    out = bind_apr_pair(batch, batch)
    assert np.abs(out.data - batch.data).max() < 1e-6
    assert out.labels == batch.labels


def test_pair_labels_follow_phase_source():
    rng = np.random.default_rng(2)
    a = array_batch(rng.random((3, 1, 8, 8)), [7, 8, 9])
    b = array_batch(rng.random((3, 1, 8, 8)), [0, 0, 0])
    assert bind_apr_pair(a, b).labels == (7, 8, 9)


def test_pair_matches_core_per_sample():
    rng = np.random.default_rng(3)
    a = rand_batch(rng, 5, 3, 10)
    b = rand_batch(rng, 5, 3, 10)
    out = bind_apr_pair(a, b)
    for k in range(5):
        ref = apr_pair(np.moveaxis(a.data[k], 0, 2), np.moveaxis(b.data[k], 0, 2))
        assert np.array_equal(out.data[k], np.moveaxis(ref, 2, 0))


def test_pair_shape_mismatch():
    rng = np.random.default_rng(4)
    a = rand_batch(rng, 2, 3, 8)
    b = rand_batch(rng, 2, 3, 10)
    with pytest.raises(DimensionError):
        bind_apr_pair(a, b)


def test_batch_parity_ten_seeded_batches():
    """bind_apr_batch output equals the core's, exactly, across ten runs."""
    rng = np.random.default_rng(5)
    cases = [
        (seed, mode, channels, size, prob)
        for seed, (mode, channels, size, prob) in enumerate(
            [
                ("P", 3, 8, 1.0),
                ("S", 3, 8, 1.0),
                ("SP", 3, 8, 1.0),
                ("P", 1, 12, 1.0),
                ("S", 1, 12, 0.7),
                ("SP", 1, 8, 0.7),
                ("P", 3, 16, 0.5),
                ("S", 3, 16, 1.0),
                ("SP", 3, 12, 0.3),
                ("SP", 1, 16, 1.0),
            ],
            start=100,
        )
    ]
    assert len(cases) == 10
    for seed, mode, channels, size, prob in cases:
        batch = rand_batch(rng, 4, channels, size)
        out = bind_apr_batch(batch, mode, seed, prob)
        ref = apr_batch(core_equivalent(batch), AprConfig(mode=mode, apply_probability=prob, seed=seed))
        assert out.labels == tuple(s.label for s in ref)
        stacked = np.stack([np.moveaxis(s.image, 2, 0) for s in ref])
        assert np.array_equal(out.data, stacked), f"drift at seed {seed} mode {mode}"


def test_cli_swap_agrees_with_pair_binding(tmp_path):
    """The file route and the array route land on the same bytes."""
    rng = np.random.default_rng(6)
    phase_path = tmp_path / "phase.png"
    amp_path = tmp_path / "amp.png"
    out_path = tmp_path / "swapped.png"
    write_image(rng.random((16, 16, 3)), phase_path)
    write_image(rng.random((16, 16, 3)), amp_path)

    assert cli_main(["swap", str(phase_path), str(amp_path), "-o", str(out_path)]) == 0
    cli_bytes = quantize_to_bytes(read_image(out_path))

    a = array_batch(read_image(phase_path)[None].transpose(0, 3, 1, 2), [0])
    b = array_batch(read_image(amp_path)[None].transpose(0, 3, 1, 2), [0])
    bound = bind_apr_pair(a, b)
    bound_bytes = quantize_to_bytes(np.moveaxis(bound.data[0], 0, 2))

    diff = np.abs(cli_bytes.astype(int) - bound_bytes.astype(int)).max()
    assert diff <= 2


def test_prob_zero_returns_input_unchanged():
    rng = np.random.default_rng(7)
    batch = rand_batch(rng, 3, 3, 8)
    out = bind_apr_batch(batch, "SP", seed=42, prob=0.0)
    assert np.array_equal(out.data, batch.data)
    assert out.labels == batch.labels


def test_sp_composes_single_then_pair_stages():
    rng = np.random.default_rng(8)
    batch = rand_batch(rng, 4, 3, 8)
    seed = 2718
    combined = bind_apr_batch(batch, "SP", seed)
    staged = bind_apr_batch(
        bind_apr_batch(batch, "S", child_seed(seed, TAG_STAGE_S)),
        "P",
        child_seed(seed, TAG_STAGE_P),
    )
    assert np.array_equal(combined.data, staged.data)
    assert combined.labels == staged.labels


def test_invalid_mode_rejected():
    rng = np.random.default_rng(9)
    batch = rand_batch(rng, 2, 3, 8)
    with pytest.raises(DomainError):
        bind_apr_batch(batch, "Q", seed=0)


def test_repeat_calls_are_stateless():
    rng = np.random.default_rng(10)
    batch = rand_batch(rng, 3, 3, 8)
    first = bind_apr_batch(batch, "SP", seed=11)
    # an interleaved unrelated call must not shift anything
    bind_apr_batch(rand_batch(rng, 2, 1, 8), "S", seed=99)
    second = bind_apr_batch(batch, "SP", seed=11)
    assert np.array_equal(first.data, second.data)


def test_versions_and_seed_constants_exported():
    assert isinstance(__version__, str)
    assert CORE_VERSION == aprkit.__version__
    import aprkit.seeding as seeding
    import aprbind

    for name in ("TAG_APPLY", "TAG_BATCH", "TAG_CHAIN_A", "TAG_CHAIN_B",
                 "TAG_PERMUTATION", "TAG_SIGN", "TAG_STAGE_P", "TAG_STAGE_S"):
        assert getattr(aprbind, name) == getattr(seeding, name)
    assert child_seed is seeding.child_seed


def test_output_batch_is_contiguous_unit_range():
    rng = np.random.default_rng(11)
    batch = rand_batch(rng, 4, 3, 8)
    out = bind_apr_batch(batch, "SP", seed=5)
    assert isinstance(out, ArrayBatch)
    assert out.data.flags["C_CONTIGUOUS"]
    assert out.data.min() >= 0.0 and out.data.max() <= 1.0
