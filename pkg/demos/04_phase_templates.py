"""Reading a frequency's phase straight off the pixels.

For one frequency cell the four rectified cosine/sine templates act as
pixel weights: two weighted sums reproduce the real and imaginary parts
of the transform coefficient, and their atan2 is the phase.  This
script checks that numerically for a handful of cells and renders the
templates for (u, v) = (1, 2) to demos/out/templates/.
"""

import os

import numpy as np

from aprkit import (
    contrast_scores,
    forward_dft,
    phase_via_templates,
    templates_at,
    write_image,
)

OUT = os.path.join(os.path.dirname(__file__), "out", "templates")


def main():
    size = 16
    rng = np.random.default_rng(3)
    x = rng.random((size, size))

    f = forward_dft(x)
    print(" (u,v)   template R        fft Re          template phase   fft phase")
    for u, v in [(0, 1), (1, 2), (3, 5), (7, 7)]:
        r, i = contrast_scores(x, u, v)
        ref = f[u, v]
        ph = phase_via_templates(x, u, v)
        print(
            f" ({u},{v})   {r:+.6f}   {ref.real:+.6f}   "
            f"{ph:+.6f}   {np.angle(ref):+.6f}"
        )

    ts = templates_at(size, 1, 2)
    for name, grid in [
        ("r_plus", ts.r_plus),
        ("r_minus", ts.r_minus),
        ("i_plus", ts.i_plus),
        ("i_minus", ts.i_minus),
    ]:
        write_image(grid, os.path.join(OUT, f"template_{name}.png"))
    print(f"wrote the four templates for (1, 2) to {OUT}")
    print("each pixel weight is a rectified cosine or sine of the planar angle")


if __name__ == "__main__":
    main()
