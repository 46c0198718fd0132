"""Probing a classifier with single-frequency perturbations.

Generates fixed-norm Fourier basis images over a small offset range,
adds each (with random signs) to a toy dataset, scores a deliberately
frequency-sensitive fake classifier, and folds the error counts into
the centered heatmap.  The grid lands in demos/out/sensitivity/ as CSV
and PNG.
"""

import os

import numpy as np

from aprkit import HEATMAP_SIDE, aggregate_heatmap, fourier_basis, perturb_dataset, write_image
from aprkit.io import write_heatmap_csv

OUT = os.path.join(os.path.dirname(__file__), "out", "sensitivity")
R = 4  # offsets -R..R instead of the full 16 to keep the demo quick


def toy_images(n=20, size=16, seed=5):
    rng = np.random.default_rng(seed)
    return [rng.random((size, size)) * 0.5 + 0.25 for _ in range(n)]


def fragile_classifier(image):
    # pretends to be a model that breaks when mid frequencies move:
    # wrong whenever the image's energy between radii 2 and 4 is high
    f = np.fft.fftshift(np.fft.fft2(image))
    half = image.shape[0] // 2
    yy, xx = np.mgrid[:image.shape[0], :image.shape[1]]
    r = np.hypot(yy - half, xx - half)
    band = (r >= 2) & (r < 4.5)
    return float(np.abs(f[band]).sum()) < 170.0


def main():
    images = toy_images()
    base_ok = sum(fragile_classifier(im) for im in images)
    print(f"clean accuracy of the toy classifier: {base_ok}/{len(images)}")

    records = []
    for i in range(-R, R + 1):
        for j in range(-R, R + 1):
            basis = fourier_basis(16, 16, i, j, norm=4.0)
            noisy = perturb_dataset(images, basis, sign_seed=99)
            wrong = sum(not fragile_classifier(im) for im in noisy)
            records.append((i, j, len(images), wrong))
    # pad the rest of the 33x33 grid as untouched cells
    probed = {(i, j) for i, j, _, _ in records}
    for i in range(-16, 17):
        for j in range(-16, 17):
            if (i, j) not in probed:
                records.append((i, j, len(images), 0))

    result = aggregate_heatmap(records)
    print(f"heatmap {result.grid.shape}, complete={result.complete}")
    centre = HEATMAP_SIDE // 2
    window = result.grid[centre - R : centre + R + 1, centre - R : centre + R + 1]
    print("error-rate window around the centre (rows are i, columns j):")
    for row in window:
        print("  " + " ".join(f"{v:.2f}" for v in row))

    write_heatmap_csv(result.grid, os.path.join(OUT, "heatmap.csv"))
    write_image(result.grid, os.path.join(OUT, "heatmap.png"))
    print(f"wrote heatmap.csv and heatmap.png to {OUT}")


if __name__ == "__main__":
    main()
