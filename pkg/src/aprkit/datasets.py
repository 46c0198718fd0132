"""Dataset-level plumbing: batched augmentation over manifests and the
perturbed-set directory layout for sensitivity runs.
"""

from __future__ import annotations

import os
from dataclasses import replace

import numpy as np

from .augment import AprConfig, LabeledImage, apr_batch
from .errors import DataError
from .io import ManifestEntry, read_image, write_image, write_manifest
from .seeding import TAG_BATCH, child_seed
from .sensitivity import FourierBasisImage, perturb_dataset

INCOMPLETE_MARKER = "INCOMPLETE"


def _png_path(path: str) -> str:
    stem, _ = os.path.splitext(path)
    return stem + ".png"


def augment_dataset(
    entries: list[ManifestEntry],
    root,
    config: AprConfig,
    out_root,
    batch_size: int = 128,
    workers: int | None = None,
) -> list[ManifestEntry]:
    """Run apr_batch over manifest entries in seeded batches and write the results.

    Entries are grouped in manifest order into batches of batch_size,
    each batch running under its own child seed so the output does not
    depend on how the grouping is executed.  Output images land under
    out_root mirroring the input paths (always .png), with a new
    manifest carrying the phase-source labels.  An I/O failure leaves an
    INCOMPLETE marker file in out_root before the error propagates.
    """
    if not entries:
        raise DataError("empty manifest")
    if batch_size <= 0:
        raise DataError(f"batch_size must be positive, got {batch_size}")
    out_paths = [_png_path(e.path) for e in entries]
    if len(set(out_paths)) != len(out_paths):
        raise DataError("output paths collide after .png renaming")

    os.makedirs(out_root, exist_ok=True)
    try:
        out_entries = []
        for b in range(0, len(entries), batch_size):
            chunk = entries[b : b + batch_size]
            batch = [LabeledImage(read_image(os.path.join(root, e.path)), e.label) for e in chunk]
            batch_config = replace(config, seed=child_seed(config.seed, TAG_BATCH, b // batch_size))
            result = apr_batch(batch, batch_config, workers=workers)
            for entry, labeled in zip(chunk, result):
                rel = _png_path(entry.path)
                write_image(labeled.image, os.path.join(out_root, rel))
                out_entries.append(ManifestEntry(rel, labeled.label, entry.split))
        write_manifest(out_entries, os.path.join(out_root, "manifest.jsonl"))
    except OSError:
        marker = os.path.join(out_root, INCOMPLETE_MARKER)
        try:
            with open(marker, "w", encoding="utf-8") as fh:
                fh.write("augmentation aborted before completion\n")
        except OSError:
            pass
        raise
    return out_entries


def basis_cell_name(i: int, j: int) -> str:
    return f"{i}_{j}"


def parse_basis_cell(name: str) -> tuple[int, int]:
    try:
        i_text, j_text = name.split("_")
        return int(i_text), int(j_text)
    except ValueError as exc:
        raise DataError(f"cannot parse frequency cell from {name!r}") from exc


def save_basis_set(basis_images, out_dir) -> None:
    """Write each basis pattern as basis_<i>_<j>.npy."""
    os.makedirs(out_dir, exist_ok=True)
    for basis in basis_images:
        np.save(os.path.join(out_dir, f"basis_{basis_cell_name(basis.i, basis.j)}.npy"), basis.image)


def load_basis_set(basis_dir) -> list[FourierBasisImage]:
    """Read back a directory of basis_<i>_<j>.npy files, sorted by (i, j)."""
    found = []
    for name in os.listdir(basis_dir):
        if not (name.startswith("basis_") and name.endswith(".npy")):
            continue
        i, j = parse_basis_cell(name[len("basis_") : -len(".npy")])
        image = np.load(os.path.join(basis_dir, name))
        found.append(FourierBasisImage(i=i, j=j, image=image, l2_norm=float(np.linalg.norm(image))))
    if not found:
        raise DataError(f"no basis files in {basis_dir}")
    return sorted(found, key=lambda b: (b.i, b.j))


def records_from_predictions(rows) -> list[tuple[int, int, int, int]]:
    """Fold (path, true, pred) rows into per-cell (i, j, n_total, n_wrong) records.

    The leading path component must be the <i>_<j> cell directory of the
    perturbed-set layout.
    """
    totals: dict[tuple[int, int], list[int]] = {}
    for path, true_label, pred_label in rows:
        cell = path.replace("\\", "/").split("/")[0]
        i, j = parse_basis_cell(cell)
        counts = totals.setdefault((i, j), [0, 0])
        counts[0] += 1
        counts[1] += int(pred_label != true_label)
    return [(i, j, counts[0], counts[1]) for (i, j), counts in sorted(totals.items())]


def write_perturbed_set(entries, root, basis_images, seed: int, out_root) -> list[ManifestEntry]:
    """Write <out>/<i>_<j>/<name>.png for every (basis, image) pair plus one manifest.

    Per-basis sign seeds derive from (seed, i, j), so adding or removing
    cells never changes the output of the others.
    """
    if not entries:
        raise DataError("empty manifest")
    names = [_png_path(os.path.basename(e.path)) for e in entries]
    if len(set(names)) != len(names):
        raise DataError("image basenames collide in the perturbed layout")
    images = [read_image(os.path.join(root, e.path)) for e in entries]
    out_entries = []
    for basis in basis_images:
        perturbed = perturb_dataset(images, basis, child_seed(seed, basis.i, basis.j))
        cell = basis_cell_name(basis.i, basis.j)
        for name, entry, image in zip(names, entries, perturbed):
            rel = os.path.join(cell, name)
            write_image(image, os.path.join(out_root, rel))
            out_entries.append(ManifestEntry(rel.replace(os.sep, "/"), entry.label, entry.split))
    write_manifest(out_entries, os.path.join(out_root, "manifest.jsonl"))
    return out_entries
