"""Model-variant configuration and the key-value config/grid file formats.

Config files are plain ``key = value`` lines (``#`` comments allowed):

    kernel_sizes = 2,3
    use_bn_input = true
    use_bn_after_cnn = true
    lstm_layers = 1

Grid files are INI-style: one ``[section]`` per variant, each section holding
overrides on top of the defaults.  Unknown keys are rejected.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path


class InvalidConfig(ValueError):
    """Configuration outside the supported architecture space."""


@dataclass(frozen=True, slots=True)
class AblationConfig:
    """One model variant; defaults reproduce the chosen architecture."""

    kernel_sizes: tuple[int, ...] = (2, 3)
    use_bn_input: bool = True
    use_bn_after_cnn: bool = True
    lstm_layers: int = 1
    filters: int = 128
    lstm_units: int = 100
    dense_units: int = 64
    dropout: float = 0.5
    lr: float = 0.001
    max_len: int = 1000

    def validate(self) -> "AblationConfig":
        if any(k not in (2, 3, 4) for k in self.kernel_sizes):
            raise InvalidConfig(f"kernel sizes must be from {{2,3,4}}: {self.kernel_sizes}")
        if len(set(self.kernel_sizes)) != len(self.kernel_sizes):
            raise InvalidConfig(f"duplicate kernel sizes: {self.kernel_sizes}")
        if self.lstm_layers not in (0, 1, 2):
            raise InvalidConfig(f"lstm_layers must be 0, 1 or 2: {self.lstm_layers}")
        if not self.kernel_sizes and self.lstm_layers == 0:
            raise InvalidConfig("need at least one of: gated CNNs, Bi-LSTM")
        if not 0.0 <= self.dropout < 1.0:
            raise InvalidConfig(f"dropout must be in [0, 1): {self.dropout}")
        if min(self.filters, self.lstm_units, self.dense_units, self.max_len) < 1:
            raise InvalidConfig("filters, lstm_units, dense_units and max_len must be >= 1")
        if self.lr <= 0:
            raise InvalidConfig(f"learning rate must be positive: {self.lr}")
        return self

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)} | {
            "kernel_sizes": list(self.kernel_sizes)
        }


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key == "kernel_sizes":
        if not raw:
            return ()
        try:
            return tuple(int(part) for part in raw.split(","))
        except ValueError as exc:
            raise InvalidConfig(f"bad kernel_sizes {raw!r}") from exc
    if key in ("use_bn_input", "use_bn_after_cnn"):
        lowered = raw.lower()
        if lowered in ("true", "1", "yes"):
            return True
        if lowered in ("false", "0", "no"):
            return False
        raise InvalidConfig(f"bad boolean for {key}: {raw!r}")
    if key in ("lstm_layers", "filters", "lstm_units", "dense_units", "max_len"):
        try:
            return int(raw)
        except ValueError as exc:
            raise InvalidConfig(f"bad integer for {key}: {raw!r}") from exc
    if key in ("dropout", "lr"):
        try:
            return float(raw)
        except ValueError as exc:
            raise InvalidConfig(f"bad float for {key}: {raw!r}") from exc
    raise InvalidConfig(f"unknown config key: {key!r}")


def _apply(config: AblationConfig, items) -> AblationConfig:
    overrides = {key.strip(): _parse_value(key.strip(), value) for key, value in items}
    return replace(config, **overrides).validate()


def load_config(path: str | Path) -> AblationConfig:
    """Parse a ``key = value`` config file on top of the defaults."""
    items = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InvalidConfig(f"{path}:{line_no}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        items.append((key, value))
    return _apply(AblationConfig(), items)


def load_grid(path: str | Path) -> list[tuple[str, AblationConfig]]:
    """Parse an INI grid file into ordered (name, config) pairs."""
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise InvalidConfig(f"bad grid file {path}: {exc}") from exc
    grid = [
        (section, _apply(AblationConfig(), parser.items(section)))
        for section in parser.sections()
    ]
    if not grid:
        raise InvalidConfig(f"grid file {path} defines no configurations")
    return grid
