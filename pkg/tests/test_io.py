import numpy as np
import pytest
from PIL import Image as PILImage

from aprkit.errors import DataError
from aprkit.io import (
    ManifestEntry,
    quantize_to_bytes,
    read_corruption_table,
    read_heatmap_csv,
    read_image,
    read_manifest,
    read_prob_table,
    read_scored_records,
    unit_from_bytes,
    write_heatmap_csv,
    write_image,
    write_manifest,
    write_prob_table,
)


def test_quantization_rounds_half_up():
    values = np.array([0.0, 0.5 / 255, 0.5, 127.4 / 255, 1.0])
    assert quantize_to_bytes(values).tolist() == [0, 1, 128, 127, 255]


def test_half_up_differs_from_bankers():
    # even byte + exact half: half-to-even would stay, half-up must go up
    v = np.array([4.5 / 255, 5.5 / 255])
    assert quantize_to_bytes(v).tolist() == [5, 6]


def test_write_read_round_trip_is_byte_stable(tmp_path):
    rng = np.random.default_rng(51)
    x = rng.random((16, 12, 3))
    p1 = tmp_path / "one.png"
    p2 = tmp_path / "two.png"
    write_image(x, p1)
    y = read_image(p1)
    assert np.abs(y - x).max() <= 0.5 / 255 + 1e-12
    write_image(y, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_gray_round_trip(tmp_path):
    rng = np.random.default_rng(52)
    x = unit_from_bytes(quantize_to_bytes(rng.random((9, 7))))
    path = tmp_path / "gray.png"
    write_image(x, path)
    y = read_image(path)
    assert y.shape == (9, 7)
    assert np.array_equal(y, x)


def test_single_channel_written_as_gray(tmp_path):
    x = np.full((4, 4, 1), 0.5)
    path = tmp_path / "chan.png"
    write_image(x, path)
    y = read_image(path)
    assert y.shape == (4, 4)
    assert np.all(quantize_to_bytes(y) == 128)


def test_extreme_values(tmp_path):
    path = tmp_path / "x.png"
    write_image(np.zeros((3, 3)), path)
    assert np.all(read_image(path) == 0.0)
    write_image(np.ones((3, 3)), path)
    assert np.all(read_image(path) == 1.0)


def test_palette_and_alpha_flatten_to_rgb(tmp_path):
    rgba = PILImage.new("RGBA", (4, 4), (255, 0, 0, 128))
    rgba_path = tmp_path / "a.png"
    rgba.save(rgba_path)
    assert read_image(rgba_path).shape == (4, 4, 3)
    pal = PILImage.new("P", (4, 4))
    pal_path = tmp_path / "p.png"
    pal.save(pal_path)
    assert read_image(pal_path).shape == (4, 4, 3)


def test_unsupported_mode_rejected(tmp_path):
    path = tmp_path / "bilevel.png"
    PILImage.new("1", (4, 4)).save(path)
    with pytest.raises(DataError):
        read_image(path)


def test_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        read_image(tmp_path / "missing.png")


def test_manifest_round_trip(tmp_path):
    entries = [
        ManifestEntry("a/x.png", 0, "train"),
        ManifestEntry("b/y.png", 3, "test"),
    ]
    path = tmp_path / "manifest.jsonl"
    write_manifest(entries, path)
    assert read_manifest(path) == entries


def test_manifest_validation(tmp_path):
    path = tmp_path / "m.jsonl"
    path.write_text('{"path": "a.png", "label": 1, "split": "train"}\n' * 2)
    with pytest.raises(DataError):
        read_manifest(path)
    path.write_text('{"path": "a.png", "label": -1, "split": "train"}\n')
    with pytest.raises(DataError):
        read_manifest(path)
    path.write_text("not json\n")
    with pytest.raises(DataError):
        read_manifest(path)


def test_scored_records_explicit_layout(tmp_path):
    path = tmp_path / "scores.csv"
    path.write_text("id,is_ood,true_label,pred_label,score\ns1,0,2,2,0.9\ns2,1,,0,0.4\n")
    records = read_scored_records(path)
    assert records[0].true_label == 2
    assert records[0].score == pytest.approx(0.9)
    assert records[1].is_ood
    assert records[1].true_label is None


def test_scored_records_probability_layout(tmp_path):
    path = tmp_path / "scores.csv"
    path.write_text("id,is_ood,true_label,p0,p1,p2\ns1,0,1,0.2,0.7,0.1\ns2,1,,0.4,0.35,0.25\n")
    records = read_scored_records(path)
    assert records[0].pred_label == 1
    assert records[0].score == pytest.approx(0.7)
    assert records[1].pred_label == 0


def test_scored_records_validation(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("sample,ood\n")
    with pytest.raises(DataError):
        read_scored_records(path)
    path.write_text("id,is_ood,true_label,pred_label,score\ns1,0,,1,0.5\n")
    with pytest.raises(DataError):
        read_scored_records(path)
    path.write_text("")
    with pytest.raises(DataError):
        read_scored_records(path)


def test_corruption_table(tmp_path):
    path = tmp_path / "table.csv"
    path.write_text("corruption,s1,s2,s3,s4,s5\nnoise,0.1,0.2,0.3,0.4,0.5\nblur,0.2,0.2,0.2,0.2,0.2\n")
    table = read_corruption_table(path)
    assert set(table) == {"noise", "blur"}
    assert table["noise"].tolist() == [0.1, 0.2, 0.3, 0.4, 0.5]
    path.write_text("corruption,s1,s2,s3,s4,s5\nnoise,0.1,0.2\n")
    with pytest.raises(DataError):
        read_corruption_table(path)
    path.write_text("corruption,s1,s2,s3,s4,s5\n")
    with pytest.raises(DataError):
        read_corruption_table(path)


def test_prob_table_round_trip(tmp_path):
    ids = ["a", "b", "c"]
    matrix = np.array([[0.2, 0.8], [0.5, 0.5], [1.0, 0.0]])
    path = tmp_path / "probs.csv"
    write_prob_table(ids, matrix, path)
    got_ids, got = read_prob_table(path)
    assert got_ids == ids
    assert np.array_equal(got, matrix)


def test_prob_table_validation(tmp_path):
    path = tmp_path / "probs.csv"
    path.write_text("name,p0\n")
    with pytest.raises(DataError):
        read_prob_table(path)
    path.write_text("id,p0,p1\na,0.5\n")
    with pytest.raises(DataError):
        read_prob_table(path)


def test_heatmap_csv_round_trip(tmp_path):
    rng = np.random.default_rng(53)
    grid = rng.random((33, 33))
    path = tmp_path / "heatmap.csv"
    write_heatmap_csv(grid, path)
    assert np.array_equal(read_heatmap_csv(path), grid)
