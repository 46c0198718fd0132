import hashlib
import os

import numpy as np


def random_image(rng, height, width, channels=None):
    shape = (height, width) if channels is None else (height, width, channels)
    return rng.random(shape)


def tree_digest(root):
    """Stable digest over relative paths and file bytes under root."""
    digest = hashlib.sha256()
    for dirpath, dirnames, filenames in sorted(os.walk(root)):
        dirnames.sort()
        for name in sorted(filenames):
            full = os.path.join(dirpath, name)
            digest.update(os.path.relpath(full, root).encode())
            with open(full, "rb") as fh:
                digest.update(fh.read())
    return digest.hexdigest()


def wrapped_phase_diff(a, b):
    """Absolute phase difference on the circle."""
    return np.abs(np.arctan2(np.sin(a - b), np.cos(a - b)))
