"""Frequency-domain image augmentation and robustness analysis.

Images are float64 grids in [0,1], gray (H, W) or color (H, W, 3).
Spectra follow the numpy DFT layout (DC at index (0, 0), unnormalized
forward transform).  Everything is deterministic under explicit seeds.
"""

from .augment import AprConfig, LabeledImage, apr_batch, apr_pair, apr_single
from .bands import Band, BandMask, band_mask, compose_band_pair, corner_radius, extract_band
from .errors import AprError, DataError, DimensionError, DomainError
from .io import (
    ManifestEntry,
    ScoredRecord,
    read_image,
    read_manifest,
    record_from_probs,
    write_image,
    write_manifest,
)
from .metrics import (
    auroc,
    blend_predictions,
    ccr_fpr_at,
    corruption_error,
    mean_corruption_error,
    oscr,
)
from .ops import OPS, ChainStep, apply_chain, apply_op, sample_chain
from .seeding import child_seed, rng_from
from .sensitivity import (
    HEATMAP_SIDE,
    MAX_OFFSET,
    FourierBasisImage,
    HeatmapResult,
    aggregate_heatmap,
    fourier_basis,
    perturb_dataset,
)
from .spectral import (
    PolarSpectrum,
    decompose,
    forward_dft,
    guard_zero_amplitude,
    inverse_dft,
    recombine,
    validate_image,
)
from .templates import TemplateSet, contrast_scores, phase_via_templates, templates_at

__version__ = "0.1.0"

__all__ = [
    "AprConfig",
    "AprError",
    "Band",
    "BandMask",
    "ChainStep",
    "DataError",
    "DimensionError",
    "DomainError",
    "FourierBasisImage",
    "HEATMAP_SIDE",
    "HeatmapResult",
    "LabeledImage",
    "MAX_OFFSET",
    "ManifestEntry",
    "OPS",
    "PolarSpectrum",
    "ScoredRecord",
    "TemplateSet",
    "__version__",
    "aggregate_heatmap",
    "apply_chain",
    "apply_op",
    "apr_batch",
    "apr_pair",
    "apr_single",
    "auroc",
    "band_mask",
    "blend_predictions",
    "ccr_fpr_at",
    "child_seed",
    "compose_band_pair",
    "contrast_scores",
    "corner_radius",
    "corruption_error",
    "decompose",
    "extract_band",
    "forward_dft",
    "fourier_basis",
    "guard_zero_amplitude",
    "inverse_dft",
    "mean_corruption_error",
    "oscr",
    "perturb_dataset",
    "phase_via_templates",
    "read_image",
    "read_manifest",
    "recombine",
    "record_from_probs",
    "rng_from",
    "sample_chain",
    "templates_at",
    "validate_image",
    "write_image",
    "write_manifest",
]
