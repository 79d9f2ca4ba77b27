from .config import CorpusConfig, RunConfig
from .manifest import ManifestEntry, read_manifest, write_manifest
from .stages import (
    FeatureGroupCombo,
    enumerate_feature_groups,
    final_holdout_eval,
    run_all,
    run_cv_grid,
    select_classifier,
    select_feature_group,
    split_holdout,
)

__all__ = [
    "CorpusConfig",
    "RunConfig",
    "ManifestEntry",
    "read_manifest",
    "write_manifest",
    "FeatureGroupCombo",
    "enumerate_feature_groups",
    "split_holdout",
    "run_cv_grid",
    "select_feature_group",
    "select_classifier",
    "final_holdout_eval",
    "run_all",
]
