"""Frequency-band masks and cross-band recombination.

Shows the three radial bands on a 32x32 grid, checks that they tile the
plane exactly once, then builds images whose amplitude comes from one
band of a texture and whose phase comes from one band of a shape.  The
sixteen amplitude/phase combinations land in demos/out/bands/.
"""

import os

import numpy as np

from aprkit import Band, compose_band_pair, write_image

OUT = os.path.join(os.path.dirname(__file__), "out", "bands")


def texture(size=32):
    n = np.arange(size)
    return 0.5 + 0.5 * np.sin(n[:, None] * 2.2) * np.cos(n[None, :] * 2.7)


def shape(size=32):
    n = np.arange(size)
    disc = ((n[:, None] - 16) ** 2 + (n[None, :] - 16) ** 2) < 90
    return np.where(disc, 0.85, 0.15).astype(float)


def main():
    h = w = 32
    counts = {}
    total = np.zeros((h, w), dtype=int)
    for band in (Band.LOW, Band.INTERMEDIATE, Band.HIGH):
        m = band.mask(h, w)
        counts[band.value] = m.count
        total += m.selected.astype(int)
    print(f"band sizes at {h}x{w}: {counts}")
    assert (total == 1).all(), "bands must partition the grid"
    print("every frequency cell belongs to exactly one band")

    tex = texture()
    shp = shape()

    bands = (Band.LOW, Band.INTERMEDIATE, Band.HIGH, Band.FULL)
    for amp_band in bands:
        for phase_band in bands:
            img = compose_band_pair(tex, amp_band, shp, phase_band)
            name = f"amp-{amp_band.value}_phase-{phase_band.value}.png"
            write_image(img, os.path.join(OUT, name))
    print(f"wrote {len(bands) ** 2} combinations to {OUT}")
    print("amp-full_phase-full.png is the shape image rebuilt with the texture's amplitude")


if __name__ == "__main__":
    main()
