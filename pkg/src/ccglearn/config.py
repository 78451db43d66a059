"""Experiment configuration: flat ``key = value`` files with ``#`` comment
lines; lists are comma-separated, booleans are true/false.  Relative paths
resolve against the config file's directory."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .induction import GenlexConfig, SplitConstraints
from .learning import TrainParams
from .model import ALL_FAMILIES


class ConfigError(ValueError):
    pass


TRAINERS = ("supervised", "validation")


@dataclass
class ExperimentConfig:
    ontology: Path
    seed_lexicon: Path
    train: Path
    output_dir: Path
    test: Path | None = None
    trainer: str = "supervised"
    epochs: int = 10
    beam: int = 50  # 0 = unbounded
    margin: float = 1.0
    learning_rate: float = 1.0
    genlex_max_span: int = 4
    genlex_max_entries: int = 2000
    split_max_new_arity: int = 3
    split_max_abstracted_vars: int = 2
    k_best: int = 10
    root_syntaxes: tuple[str, ...] = ("S",)
    features: tuple[str, ...] = ALL_FAMILIES
    seed_entry_weight: float = 1.0
    permissive_constants: bool = False
    atomic_categories: tuple[str, ...] = ()

    def train_params(self) -> TrainParams:
        return TrainParams(
            epochs=self.epochs,
            beam=self.beam if self.beam > 0 else None,
            margin=self.margin,
            learning_rate=self.learning_rate,
            genlex=GenlexConfig(self.genlex_max_span, self.genlex_max_entries),
            splits=SplitConstraints(self.split_max_new_arity,
                                    self.split_max_abstracted_vars),
            k_best=self.k_best,
            root_syntaxes=self.root_syntaxes,
            features=self.features,
            seed_entry_weight=self.seed_entry_weight,
        )


_PATH_KEYS = ("ontology", "seed_lexicon", "train", "test", "output_dir")
_INT_KEYS = ("epochs", "beam", "genlex_max_span", "genlex_max_entries",
             "split_max_new_arity", "split_max_abstracted_vars", "k_best")
_FLOAT_KEYS = ("margin", "learning_rate", "seed_entry_weight")
_LIST_KEYS = ("root_syntaxes", "features", "atomic_categories")
_BOOL_KEYS = ("permissive_constants",)
_REQUIRED = ("ontology", "seed_lexicon", "train", "output_dir")
_ALL_KEYS = set(_PATH_KEYS) | set(_INT_KEYS) | set(_FLOAT_KEYS) \
    | set(_LIST_KEYS) | set(_BOOL_KEYS) | {"trainer"}


def _parse_lines(text: str) -> dict[str, tuple[int, str]]:
    values: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} "
                              f"(first set on line {values[key][0]})")
        values[key] = (lineno, value)
    return values


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    values = _parse_lines(text)
    base = path.parent

    for key in _REQUIRED:
        if key not in values:
            raise ConfigError(f"{path}: missing required key {key!r}")

    fields: dict = {}
    for key, (lineno, value) in values.items():
        try:
            if key in _PATH_KEYS:
                fields[key] = (base / value).resolve()
            elif key in _INT_KEYS:
                fields[key] = int(value)
            elif key in _FLOAT_KEYS:
                fields[key] = float(value)
            elif key in _BOOL_KEYS:
                if value not in ("true", "false"):
                    raise ValueError(f"expected true/false, got {value!r}")
                fields[key] = value == "true"
            elif key in _LIST_KEYS:
                fields[key] = tuple(part.strip() for part in value.split(",")
                                    if part.strip())
            else:  # trainer
                if value not in TRAINERS:
                    raise ValueError(f"trainer must be one of {TRAINERS}, got {value!r}")
                fields[key] = value
        except ValueError as err:
            raise ConfigError(f"{path}: line {lineno}: bad value for {key!r}: {err}") from err

    config = ExperimentConfig(**fields)

    for key in ("ontology", "seed_lexicon", "train", "test"):
        value = getattr(config, key)
        if value is not None and not Path(value).is_file():
            raise ConfigError(f"{path}: {key} file does not exist: {value}")
    if config.epochs < 1:
        raise ConfigError(f"{path}: epochs must be >= 1")
    if config.beam < 0:
        raise ConfigError(f"{path}: beam must be >= 1, or 0 for unbounded")
    if config.margin < 0:
        raise ConfigError(f"{path}: margin must be >= 0")
    if config.k_best < 1:
        raise ConfigError(f"{path}: k_best must be >= 1")
    if config.genlex_max_span < 1 or config.genlex_max_entries < 1:
        raise ConfigError(f"{path}: genlex bounds must be positive")
    if config.split_max_new_arity < 0 or config.split_max_abstracted_vars < 0:
        raise ConfigError(f"{path}: split constraints must be >= 0")
    unknown = set(config.features) - set(ALL_FAMILIES)
    if unknown:
        raise ConfigError(f"{path}: unknown feature families {sorted(unknown)}")
    if not config.root_syntaxes:
        raise ConfigError(f"{path}: root_syntaxes must be non-empty")
    return config
