"""Run configuration: one JSON file drives every stage of the protocol.

All randomness derives from master_seed through named sub-seeds, so a
(config, master_seed) pair fully determines every emitted table.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError
from ..features import FeatureConfig
from ..ml import ModelKind, ModelSpec
from ..preprocess import PreprocessConfig


def seed_from(master_seed: int, *tags) -> int:
    """Stable named sub-seed derived from the master seed."""
    text = "merstn|" + "|".join(str(t) for t in tags) + f"|{master_seed}"
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "little") >> 1


@dataclass(frozen=True)
class CorpusConfig:
    n_inside: int = 200
    n_outside: int = 540
    duration_s: float = 8.0
    fs: float = 20000.0
    background: str = "white"
    # Multiplicative per-recording jitter on rate and spike amplitude keeps
    # the two classes overlapping enough that fold-level model differences
    # stay nonzero (degenerate paired tests would abort the protocol).
    rate_jitter: float = 0.35
    amplitude_jitter: float = 0.3
    dual_channel_patients: int = 2

    def __post_init__(self) -> None:
        if self.n_inside < 1 or self.n_outside < 1:
            raise ConfigError("corpus needs at least one recording per class")
        if not 0 <= self.rate_jitter < 1 or not 0 <= self.amplitude_jitter < 1:
            raise ConfigError("jitter fractions must lie in [0, 1)")


@dataclass(frozen=True)
class RunConfig:
    out_dir: str = "out"
    manifest: str | None = None  # None: use the synthesized corpus manifest
    master_seed: int = 20250810
    k_folds: int = 10
    train_fraction: float = 0.8
    alpha: float = 0.05
    bootstrap_resamples: int = 1000
    jobs: int = 1
    group_split: bool = False  # sensitivity mode: stratify by recording
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    features: FeatureConfig = field(default_factory=FeatureConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    roster: tuple[str, ...] = tuple(kind.value for kind in ModelKind)

    def __post_init__(self) -> None:
        if not 0.5 < self.train_fraction < 0.95:
            raise ConfigError(
                f"train_fraction must lie in (0.5, 0.95), got {self.train_fraction}"
            )
        if self.k_folds < 2:
            raise ConfigError(f"k_folds must be >= 2, got {self.k_folds}")
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.bootstrap_resamples < 1 or self.jobs < 1:
            raise ConfigError("bootstrap_resamples and jobs must be >= 1")
        if not self.roster:
            raise ConfigError("model roster is empty")
        for name in self.roster:
            try:
                ModelKind(name)
            except ValueError:
                raise ConfigError(f"unknown model kind {name!r} in roster")

    def model_specs(self) -> tuple[ModelSpec, ...]:
        return tuple(
            ModelSpec(ModelKind(name), seed=seed_from(self.master_seed, "model", name) % 2**32)
            for name in self.roster
        )

    @property
    def out_path(self) -> Path:
        return Path(self.out_dir)


def _build(cls, data: dict, context: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown {context} keys: {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"bad {context} block: {exc}")


def config_from_dict(data: dict) -> RunConfig:
    data = dict(data)
    for key, cls in (
        ("preprocess", PreprocessConfig),
        ("features", FeatureConfig),
        ("corpus", CorpusConfig),
    ):
        if key in data and isinstance(data[key], dict):
            data[key] = _build(cls, data[key], key)
    if "roster" in data:
        data["roster"] = tuple(data["roster"])
    return _build(RunConfig, data, "run config")


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return config_from_dict(data)


def config_to_dict(config: RunConfig) -> dict:
    return dataclasses.asdict(config)
