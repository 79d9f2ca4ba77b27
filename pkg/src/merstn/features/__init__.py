from .embedding import EmbeddingParams, autocorr_delay, decimate_uniform, delay_embed
from .entropy import (
    approximate_entropy,
    permutation_entropy,
    sample_entropy,
    shannon_entropy,
    tsallis_entropy,
)
from .extract import (
    DOMAINS,
    FEATURE_NAMES,
    FeatureConfig,
    FeatureVector,
    extract_features,
)
from .nonlinear import higuchi_fd, hurst_rs, katz_fd, lle_rosenstein, lz_complexity
from .rqa import recurrence_matrix, rqa_metrics

__all__ = [
    "EmbeddingParams",
    "autocorr_delay",
    "decimate_uniform",
    "delay_embed",
    "recurrence_matrix",
    "rqa_metrics",
    "lle_rosenstein",
    "hurst_rs",
    "higuchi_fd",
    "katz_fd",
    "lz_complexity",
    "shannon_entropy",
    "permutation_entropy",
    "sample_entropy",
    "approximate_entropy",
    "tsallis_entropy",
    "FeatureConfig",
    "FeatureVector",
    "FEATURE_NAMES",
    "DOMAINS",
    "extract_features",
]
