"""File I/O: 8-bit raster images, JSONL manifests, and the CSV record formats.

Images on disk are 8-bit grayscale or RGB; in memory they are float64 in
[0,1].  Quantization rounds half up, so 0.5 maps to byte 128 and the
round trip read(write(x)) moves any pixel by at most 1/510.  numpy's
``round`` rounds half to even and would break that contract, hence the
explicit floor(v*255 + 0.5).
"""

from __future__ import annotations

import csv
import json
import os
from typing import Iterable, NamedTuple

import numpy as np
from PIL import Image as PILImage

from .errors import DataError
from .spectral import validate_image

LOSSLESS_EXTENSIONS = (".png", ".bmp", ".tiff", ".tif")


def quantize_to_bytes(image: np.ndarray) -> np.ndarray:
    """Map [0,1] floats to uint8 with round-half-up."""
    arr = np.asarray(image, dtype=np.float64)
    return np.clip(np.floor(arr * 255.0 + 0.5), 0, 255).astype(np.uint8)


def unit_from_bytes(data: np.ndarray) -> np.ndarray:
    return np.asarray(data, dtype=np.float64) / 255.0


def read_image(path) -> np.ndarray:
    """Load an 8-bit raster file as a [0,1] float array.

    Grayscale files come back 2D, color files (H, W, 3).  Palette and
    alpha variants are flattened to RGB; exotic modes are rejected.
    """
    with PILImage.open(path) as im:
        if im.mode == "L":
            data = np.asarray(im)
        elif im.mode == "RGB":
            data = np.asarray(im)
        elif im.mode in ("LA", "I;16", "I"):
            data = np.asarray(im.convert("L"))
        elif im.mode in ("P", "RGBA", "CMYK", "YCbCr"):
            data = np.asarray(im.convert("RGB"))
        else:
            raise DataError(f"unsupported image mode {im.mode!r} in {path}")
    if data.size == 0:
        raise DataError(f"zero-sized image {path}")
    return unit_from_bytes(data)


def write_image(image: np.ndarray, path) -> None:
    """Quantize to 8 bits and save; format follows the file extension."""
    arr = validate_image(image)
    data = quantize_to_bytes(arr)
    if data.ndim == 3 and data.shape[2] == 1:
        data = data[:, :, 0]
    mode = "RGB" if data.ndim == 3 else "L"
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    PILImage.fromarray(data, mode).save(path)


class ManifestEntry(NamedTuple):
    path: str
    label: int
    split: str


def read_manifest(path) -> list[ManifestEntry]:
    """Parse a JSONL manifest: one {"path", "label", "split"} object per line."""
    entries = []
    seen = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            try:
                entry = ManifestEntry(str(record["path"]), int(record["label"]), str(record.get("split", "train")))
            except (KeyError, TypeError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: bad manifest record: {record!r}") from exc
            if entry.label < 0:
                raise DataError(f"{path}:{lineno}: negative label {entry.label}")
            if entry.path in seen:
                raise DataError(f"{path}:{lineno}: duplicate path {entry.path!r}")
            seen.add(entry.path)
            entries.append(entry)
    return entries


def write_manifest(entries: Iterable[ManifestEntry], path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps({"path": entry.path, "label": entry.label, "split": entry.split}) + "\n")


class ScoredRecord(NamedTuple):
    """One evaluation record: OOD samples carry true_label None."""

    id: str
    is_ood: bool
    true_label: int | None
    pred_label: int
    score: float


def record_from_probs(id, is_ood, true_label, probs) -> ScoredRecord:
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0:
        raise DataError(f"probability vector must be non-empty 1D, got shape {probs.shape}")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-6:
        raise DataError(f"invalid probability vector for record {id!r}: sum {probs.sum()}")
    pred = int(np.argmax(probs))
    return ScoredRecord(str(id), bool(is_ood), true_label, pred, float(probs[pred]))


def _parse_optional_label(text: str) -> int | None:
    text = text.strip()
    if text == "" or text.lower() == "none":
        return None
    return int(text)


def read_scored_records(path) -> list[ScoredRecord]:
    """Read a score CSV in either accepted layout.

    With a ``score`` column: id,is_ood,true_label,pred_label,score.
    Otherwise every column after true_label is a class probability and
    pred/score come from the argmax.
    """
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"empty score file {path}")
        header = [h.strip().lower() for h in header]
        if header[:3] != ["id", "is_ood", "true_label"]:
            raise DataError(f"{path}: header must start with id,is_ood,true_label")
        explicit = header[3:] == ["pred_label", "score"]
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                sample_id = row[0]
                is_ood = bool(int(row[1]))
                true_label = _parse_optional_label(row[2])
                if explicit:
                    record = ScoredRecord(sample_id, is_ood, true_label, int(row[3]), float(row[4]))
                else:
                    record = record_from_probs(sample_id, is_ood, true_label, [float(v) for v in row[3:]])
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: bad score row: {exc}") from exc
            if not is_ood and record.true_label is None:
                raise DataError(f"{path}:{lineno}: in-distribution record lacks true_label")
            records.append(record)
    return records


def read_corruption_table(path) -> dict[str, np.ndarray]:
    """Read `corruption,s1,s2,s3,s4,s5` rows into name -> 5 error rates."""
    table = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["corruption", "s1", "s2", "s3", "s4", "s5"]:
            raise DataError(f"{path}: expected header corruption,s1,s2,s3,s4,s5")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 6:
                raise DataError(f"{path}:{lineno}: expected 6 columns, got {len(row)}")
            name = row[0].strip()
            if name in table:
                raise DataError(f"{path}:{lineno}: duplicate corruption {name!r}")
            try:
                table[name] = np.array([float(v) for v in row[1:]], dtype=np.float64)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad error value: {exc}") from exc
    if not table:
        raise DataError(f"{path}: no corruption rows")
    return table


def read_predictions(path) -> list[tuple[str, int, int]]:
    """Read `path,true_label,pred_label` rows."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["path", "true_label", "pred_label"]:
            raise DataError(f"{path}: expected header path,true_label,pred_label")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append((row[0], int(row[1]), int(row[2])))
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: bad prediction row: {exc}") from exc
    return rows


def read_prob_table(path) -> tuple[list[str], np.ndarray]:
    """Read `id,p0,p1,...` rows into ids plus a row-per-sample probability matrix."""
    ids, rows = [], []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[0].strip().lower() != "id" or len(header) < 2:
            raise DataError(f"{path}: expected header id,p0,p1,...")
        width = len(header) - 1
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width + 1:
                raise DataError(f"{path}:{lineno}: expected {width + 1} columns, got {len(row)}")
            ids.append(row[0])
            try:
                rows.append([float(v) for v in row[1:]])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: bad probability: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no probability rows")
    return ids, np.array(rows, dtype=np.float64)


def write_prob_table(ids, matrix: np.ndarray, path) -> None:
    matrix = np.asarray(matrix, dtype=np.float64)
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id"] + [f"p{k}" for k in range(matrix.shape[1])])
        for sample_id, row in zip(ids, matrix):
            writer.writerow([sample_id] + [repr(float(v)) for v in row])


def read_heatmap_records(path) -> list[tuple[int, int, int, int]]:
    """Read `i,j,n_total,n_wrong` rows."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["i", "j", "n_total", "n_wrong"]:
            raise DataError(f"{path}: expected header i,j,n_total,n_wrong")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append((int(row[0]), int(row[1]), int(row[2]), int(row[3])))
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: bad heatmap record: {exc}") from exc
    return rows


def write_heatmap_records(records, path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "n_total", "n_wrong"])
        for i, j, n_total, n_wrong in records:
            writer.writerow([i, j, n_total, n_wrong])


def write_heatmap_csv(grid: np.ndarray, path) -> None:
    grid = np.asarray(grid, dtype=np.float64)
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        for row in grid:
            writer.writerow([repr(float(v)) for v in row])


def read_heatmap_csv(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh) if row]
    if not rows:
        raise DataError(f"{path}: empty heatmap")
    return np.array(rows, dtype=np.float64)
