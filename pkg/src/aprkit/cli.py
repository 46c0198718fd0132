"""Command-line surface for the toolkit.

Exit codes: 0 success, 2 usage error, 3 data or domain error, 4 I/O
error.  All commands are deterministic given their --seed.
"""

from __future__ import annotations

import json
import os
from itertools import product

import click
import numpy as np

from .augment import AprConfig, apr_pair
from .bands import Band, compose_band_pair
from .datasets import (
    augment_dataset,
    load_basis_set,
    records_from_predictions,
    save_basis_set,
    write_perturbed_set,
)
from .errors import AprError, DataError
from .io import (
    quantize_to_bytes,
    read_corruption_table,
    read_heatmap_records,
    read_image,
    read_manifest,
    read_predictions,
    read_prob_table,
    read_scored_records,
    unit_from_bytes,
    write_heatmap_csv,
    write_image,
    write_prob_table,
)
from .metrics import auroc, blend_predictions, corruption_error, mean_corruption_error, oscr
from .sensitivity import MAX_OFFSET, aggregate_heatmap, fourier_basis
from .spectral import decompose, forward_dft
from .templates import templates_at

BAND_ORDER = (Band.LOW, Band.INTERMEDIATE, Band.HIGH, Band.FULL)


@click.group()
def cli():
    """Frequency-domain augmentation and robustness analysis tools."""


def _render_log_amplitude(amplitude: np.ndarray) -> np.ndarray:
    shifted = np.fft.fftshift(amplitude, axes=(0, 1))
    out = np.log1p(shifted)
    peak = out.max()
    return out / peak if peak > 0 else out


def _render_phase(phase: np.ndarray) -> np.ndarray:
    shifted = np.fft.fftshift(phase, axes=(0, 1))
    return (shifted + np.pi) / (2.0 * np.pi)


@cli.command("decompose")
@click.argument("input_path")
@click.option("--amp", "amp_out", required=True, help="output file for the log-amplitude rendering")
@click.option("--phase", "phase_out", required=True, help="output file for the phase rendering")
def decompose_cmd(input_path, amp_out, phase_out):
    """Render the amplitude and phase spectra of an image, DC centered."""
    polar = decompose(forward_dft(read_image(input_path)))
    write_image(_render_log_amplitude(polar.amplitude), amp_out)
    write_image(_render_phase(polar.phase), phase_out)


@cli.command("swap")
@click.argument("phase_src")
@click.argument("amp_src")
@click.option("-o", "--output", required=True)
def swap_cmd(phase_src, amp_src, output):
    """Recombine the phase of one image with the amplitude of another."""
    result = apr_pair(read_image(phase_src), read_image(amp_src))
    write_image(result, output)


def _resize(image: np.ndarray, size: int) -> np.ndarray:
    from PIL import Image as PILImage

    data = quantize_to_bytes(image)
    mode = "RGB" if data.ndim == 3 else "L"
    im = PILImage.fromarray(data, mode).resize((size, size), PILImage.BILINEAR)
    return unit_from_bytes(np.asarray(im))


@cli.command("grid")
@click.argument("input_path")
@click.option("-o", "--output", "out_dir", required=True)
@click.option("--size", default=32, show_default=True, help="side length the input is resized to")
def grid_cmd(input_path, out_dir, size):
    """Write all 16 band-combination images for one input."""
    if size <= 0:
        raise click.UsageError("--size must be positive")
    image = _resize(read_image(input_path), size)
    os.makedirs(out_dir, exist_ok=True)
    for amp_band, phase_band in product(BAND_ORDER, BAND_ORDER):
        out = compose_band_pair(image, amp_band, image, phase_band)
        name = f"amp-{amp_band.value}_phase-{phase_band.value}.png"
        write_image(out, os.path.join(out_dir, name))
    click.echo(f"wrote 16 combinations to {out_dir}")


@cli.command("augment")
@click.option("--manifest", "manifest_path", required=True)
@click.option("--mode", type=click.Choice(["p", "s", "sp"], case_sensitive=False), required=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--prob", default=1.0, show_default=True, type=float, help="per-sample apply probability")
@click.option("-o", "--output", "out_root", required=True)
@click.option("--batch-size", default=128, show_default=True, type=int)
@click.option("--workers", default=None, type=int, help="thread count for per-sample work")
@click.option("--chain-min", default=1, show_default=True, type=int)
@click.option("--chain-max", default=3, show_default=True, type=int)
def augment_cmd(manifest_path, mode, seed, prob, out_root, batch_size, workers, chain_min, chain_max):
    """Augment a manifest of images; labels follow the phase source."""
    entries = read_manifest(manifest_path)
    config = AprConfig(
        mode=mode.upper(),
        apply_probability=prob,
        seed=seed,
        chain_length_range=(chain_min, chain_max),
    )
    written = augment_dataset(
        entries,
        os.path.dirname(os.path.abspath(manifest_path)),
        config,
        out_root,
        batch_size=batch_size,
        workers=workers,
    )
    click.echo(f"wrote {len(written)} images to {out_root}")


@cli.command("templates")
@click.option("--size", required=True, type=int)
@click.option("--u", required=True, type=int)
@click.option("--v", required=True, type=int)
@click.option("-o", "--output", "out_dir", required=True)
def templates_cmd(size, u, v, out_dir):
    """Write the four template grids for frequency (u, v) as images."""
    t = templates_at(size, u, v)
    os.makedirs(out_dir, exist_ok=True)
    for name, grid in (
        ("template_r_plus.png", t.r_plus),
        ("template_r_minus.png", t.r_minus),
        ("template_i_plus.png", t.i_plus),
        ("template_i_minus.png", t.i_minus),
    ):
        write_image(grid, os.path.join(out_dir, name))
    click.echo(f"wrote 4 templates to {out_dir}")


def _parse_size(text: str) -> tuple[int, int]:
    try:
        h_text, w_text = text.lower().split("x")
        height, width = int(h_text), int(w_text)
    except ValueError:
        raise click.UsageError(f"--size must look like 32x32, got {text!r}")
    if height <= 0 or width <= 0:
        raise click.UsageError(f"--size must be positive, got {text!r}")
    return height, width


@cli.command("basis")
@click.option("-o", "--output", "out_dir", required=True)
@click.option("--size", required=True, help="grid size as HxW, e.g. 32x32")
@click.option("--norm", default=15.0, show_default=True, type=float)
@click.option("--i", "i_off", default=None, type=int)
@click.option("--j", "j_off", default=None, type=int)
@click.option("--all", "all_cells", is_flag=True, help="generate every |i|,|j| <= 16 cell")
def basis_cmd(out_dir, size, norm, i_off, j_off, all_cells):
    """Generate frequency-basis perturbation patterns as .npy files."""
    height, width = _parse_size(size)
    if all_cells:
        if i_off is not None or j_off is not None:
            raise click.UsageError("--all excludes --i/--j")
        cells = list(product(range(-MAX_OFFSET, MAX_OFFSET + 1), repeat=2))
    else:
        if i_off is None or j_off is None:
            raise click.UsageError("give both --i and --j, or --all")
        cells = [(i_off, j_off)]
    basis_images = [fourier_basis(height, width, i, j, norm) for i, j in cells]
    save_basis_set(basis_images, out_dir)
    with open(os.path.join(out_dir, "meta.json"), "w", encoding="utf-8") as fh:
        json.dump({"height": height, "width": width, "norm": norm, "count": len(cells)}, fh)
        fh.write("\n")
    click.echo(f"wrote {len(basis_images)} basis patterns to {out_dir}")


@cli.command("perturb")
@click.option("--manifest", "manifest_path", required=True)
@click.option("--basis-dir", required=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("-o", "--output", "out_root", required=True)
def perturb_cmd(manifest_path, basis_dir, seed, out_root):
    """Add each basis pattern (random signs) to every manifest image."""
    entries = read_manifest(manifest_path)
    basis_images = load_basis_set(basis_dir)
    written = write_perturbed_set(
        entries, os.path.dirname(os.path.abspath(manifest_path)), basis_images, seed, out_root
    )
    click.echo(f"wrote {len(written)} perturbed images to {out_root}")


@cli.command("heatmap")
@click.option("--records", "records_path", required=True)
@click.option("-o", "--output", "out_csv", required=True)
@click.option("--png", "png_path", default=None)
def heatmap_cmd(records_path, out_csv, png_path):
    """Aggregate error records into the 33x33 sensitivity heatmap.

    Accepts either i,j,n_total,n_wrong records or path,true_label,
    pred_label predictions over the perturbed-set layout.
    """
    with open(records_path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().lower().split(",")
    if header[:4] == ["i", "j", "n_total", "n_wrong"]:
        records = read_heatmap_records(records_path)
    elif header[:3] == ["path", "true_label", "pred_label"]:
        records = records_from_predictions(read_predictions(records_path))
    else:
        raise DataError(f"{records_path}: unrecognized records header {header}")
    result = aggregate_heatmap(records)
    write_heatmap_csv(result.grid, out_csv)
    if png_path:
        write_image(result.grid, png_path)
    if result.missing:
        click.echo(f"warning: {len(result.missing)} heatmap cells have no records", err=True)


@cli.group("metrics")
def metrics_group():
    """Corruption and open-set metrics over CSV inputs."""


@metrics_group.command("mce")
@click.option("--table", "table_path", required=True)
@click.option("--reference", "reference_path", required=True)
def mce_cmd(table_path, reference_path):
    """Per-corruption normalized errors and their mean."""
    table = read_corruption_table(table_path)
    reference = read_corruption_table(reference_path)
    ce_values = []
    for name, errors in table.items():
        if name not in reference:
            raise DataError(f"corruption {name!r} missing from reference table")
        ce = corruption_error(errors, reference[name])
        ce_values.append(ce)
        click.echo(f"{name},{ce:.6f}")
    click.echo(f"mCE,{mean_corruption_error(ce_values):.6f}")


def _score_sides(records_path):
    records = read_scored_records(records_path)
    in_scores = [r.score for r in records if not r.is_ood]
    out_scores = [r.score for r in records if r.is_ood]
    return records, in_scores, out_scores


@metrics_group.command("auroc")
@click.option("--scores", "scores_path", required=True)
def auroc_cmd(scores_path):
    """Ranking separability of in-distribution vs OOD scores."""
    _, in_scores, out_scores = _score_sides(scores_path)
    if not in_scores or not out_scores:
        raise DataError("score file needs both in-distribution and OOD records")
    click.echo(f"{auroc(in_scores, out_scores):.6f}")


@metrics_group.command("oscr")
@click.option("--scores", "scores_path", required=True)
def oscr_cmd(scores_path):
    """Area under the CCR-vs-FPR threshold sweep."""
    records, _, _ = _score_sides(scores_path)
    click.echo(f"{oscr(records):.6f}")


@metrics_group.command("blend")
@click.option("--phase", "phase_path", required=True)
@click.option("--amp", "amp_path", required=True)
@click.option("--lam", required=True, type=float)
@click.option("-o", "--output", "out_path", required=True)
def blend_cmd(phase_path, amp_path, lam, out_path):
    """Blend two probability tables row by row."""
    phase_ids, phase_mat = read_prob_table(phase_path)
    amp_ids, amp_mat = read_prob_table(amp_path)
    if phase_ids != amp_ids:
        raise DataError("phase and amplitude tables list different ids")
    if phase_mat.shape != amp_mat.shape:
        raise DataError(f"table shapes differ: {phase_mat.shape} vs {amp_mat.shape}")
    blended = np.stack(
        [blend_predictions(p, a, lam) for p, a in zip(phase_mat, amp_mat)]
    )
    write_prob_table(phase_ids, blended, out_path)
    click.echo(f"wrote {len(phase_ids)} blended rows to {out_path}")


def main(argv=None) -> int:
    """Entry point mapping exceptions onto the documented exit codes."""
    try:
        cli.main(args=argv, prog_name="apr", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return 130
    except AprError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        return 4
    return 0
