import numpy as np
import pytest

from aprkit.errors import DataError, DimensionError, DomainError
from aprkit.sensitivity import (
    HEATMAP_SIDE,
    MAX_OFFSET,
    aggregate_heatmap,
    fourier_basis,
    perturb_dataset,
)

from conftest import random_image


def test_requested_norm_is_exact():
    for i, j in ((0, 0), (3, -2), (-16, 16), (5, 0)):
        basis = fourier_basis(32, 32, i, j, 15.0)
        assert abs(np.linalg.norm(basis.image) - 15.0) < 1e-9


def test_dc_basis_is_constant():
    basis = fourier_basis(32, 32, 0, 0, 15.0)
    assert np.abs(basis.image - 15.0 / 32.0).max() < 1e-12


def test_basis_is_zero_mean_off_dc():
    for i, j in ((1, 0), (4, -3), (-2, 7)):
        basis = fourier_basis(16, 16, i, j, 15.0)
        assert abs(basis.image.mean()) < 1e-12


def test_point_symmetric_offsets_give_identical_patterns():
    a = fourier_basis(16, 16, 3, -5, 15.0)
    b = fourier_basis(16, 16, -3, 5, 15.0)
    assert np.abs(a.image - b.image).max() < 1e-12


def canonical_cells(side):
    """Distinct frequency classes on a side x side grid, one per symmetric pair."""
    cells = []
    seen = set()
    for i in range(-side // 2, side - side // 2):
        for j in range(-side // 2, side - side // 2):
            key = min((i % side, j % side), ((-i) % side, (-j) % side))
            if key not in seen:
                seen.add(key)
                cells.append((i, j))
    return cells


def test_distinct_bases_are_orthogonal():
    cells = canonical_cells(8)
    patterns = [fourier_basis(8, 8, i, j, 15.0).image for i, j in cells]
    for a in range(len(patterns)):
        for b in range(a + 1, len(patterns)):
            assert abs(np.sum(patterns[a] * patterns[b])) < 1e-9, (cells[a], cells[b])


def test_basis_validation():
    with pytest.raises(DomainError):
        fourier_basis(32, 32, 17, 0, 15.0)
    with pytest.raises(DomainError):
        fourier_basis(32, 32, 0, 0, 0.0)
    with pytest.raises(DimensionError):
        fourier_basis(0, 32, 0, 0, 15.0)


def test_perturb_adds_signed_pattern_and_clamps():
    basis = fourier_basis(32, 32, 0, 0, 15.0)
    images = [np.full((32, 32), 0.5), np.full((32, 32, 3), 0.5)]
    out = perturb_dataset(images, basis, sign_seed=4)
    delta = 15.0 / 32.0
    for got in out:
        flat = np.unique(np.round(got, 10))
        assert flat.size == 1
        assert flat[0] in (pytest.approx(0.5 + delta), pytest.approx(0.5 - delta))
    big = [np.full((32, 32), 0.9)]
    clamped = perturb_dataset(big, basis, sign_seed=0)[0]
    assert clamped.max() <= 1.0
    assert clamped.min() >= 0.0


def test_perturb_signs_are_deterministic_and_mixed():
    rng = np.random.default_rng(31)
    images = [random_image(rng, 8, 8) for _ in range(64)]
    basis = fourier_basis(8, 8, 1, 1, 2.0)
    first = perturb_dataset(images, basis, sign_seed=9)
    second = perturb_dataset(images, basis, sign_seed=9)
    for a, b in zip(first, second):
        assert np.array_equal(a, b)
    signs = set()
    for original, got in zip(images, perturb_dataset(images, basis, sign_seed=10)):
        residual = np.clip(original + basis.image, 0, 1) - got
        signs.add("plus" if np.abs(residual).max() < 1e-12 else "minus")
    assert signs == {"plus", "minus"}


def test_perturb_dimension_mismatch():
    basis = fourier_basis(8, 8, 1, 0, 1.0)
    with pytest.raises(DimensionError):
        perturb_dataset([np.zeros((9, 8))], basis, sign_seed=0)


def test_aggregate_heatmap_shape_and_cells():
    result = aggregate_heatmap([(0, 0, 1000, 100)])
    assert result.grid.shape == (HEATMAP_SIDE, HEATMAP_SIDE) == (33, 33)
    assert result.grid[MAX_OFFSET, MAX_OFFSET] == pytest.approx(0.1)
    assert len(result.missing) == 33 * 33 - 1
    assert not result.complete


def test_aggregate_complete_grid():
    records = [
        (i, j, 10, 0)
        for i in range(-MAX_OFFSET, MAX_OFFSET + 1)
        for j in range(-MAX_OFFSET, MAX_OFFSET + 1)
    ]
    result = aggregate_heatmap(records)
    assert result.complete
    assert np.abs(result.grid).max() == 0.0


def test_aggregate_is_order_invariant():
    records = [(0, 0, 10, 1), (3, -4, 20, 5), (-16, 16, 4, 4)]
    a = aggregate_heatmap(records)
    b = aggregate_heatmap(records[::-1])
    assert np.array_equal(a.grid, b.grid)
    assert a.missing == b.missing


def test_aggregate_validation():
    with pytest.raises(DataError):
        aggregate_heatmap([(0, 0, 10, 1), (0, 0, 5, 1)])
    with pytest.raises(DataError):
        aggregate_heatmap([(0, 0, 0, 0)])
    with pytest.raises(DataError):
        aggregate_heatmap([(0, 0, 5, 6)])
    with pytest.raises(DomainError):
        aggregate_heatmap([(17, 0, 5, 1)])


def test_records_round_trip_through_csv(tmp_path):
    from aprkit.io import read_heatmap_records, write_heatmap_records

    records = [(-16, 16, 1000, 123), (0, 0, 10, 0), (5, -7, 42, 41)]
    path = tmp_path / "records.csv"
    write_heatmap_records(records, path)
    assert read_heatmap_records(path) == records
