"""Analysis configuration and its flat ``key = value`` file format.

Example file::

    # real-axis sweep
    lambda_max = 10
    lambda_steps = 101
    # complex grid (open first quadrant)
    complex_re_max = 3
    complex_im_max = 3
    complex_steps = 10
    epsilon = 1e-3
    tol = 1e-10

Unknown keys are rejected.  Omitted keys keep their defaults.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError
from .lagrangian_flow import IntegrationControls

_SECTION = "analysis"


@dataclass(frozen=True)
class AnalysisConfig:
    lambda_max: float = 10.0
    lambda_steps: int = 101
    complex_re_max: float = 3.0
    complex_im_max: float = 3.0
    complex_steps: int = 10
    epsilon: float = 1e-3
    tol: float = 1e-10

    def __post_init__(self):
        for name in ("lambda_max", "complex_re_max", "complex_im_max", "tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive number, got {value!r}")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        for name in ("lambda_steps", "complex_steps"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 2:
                raise ConfigError(f"{name} must be an integer >= 2, got {value!r}")

    @property
    def controls(self) -> IntegrationControls:
        return IntegrationControls(epsilon=self.epsilon, tol=self.tol)

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kwargs) -> "AnalysisConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    @classmethod
    def from_text(cls, text: str) -> "AnalysisConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.optionxform = str
        try:
            parser.read_string(f"[{_SECTION}]\n{text}")
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        kinds = {f.name: f.type for f in fields(cls)}
        values = {}
        for key, raw in parser.items(_SECTION):
            if key not in kinds:
                raise ConfigError(f"unknown config key {key!r}; allowed: {', '.join(kinds)}")
            try:
                values[key] = int(raw) if kinds[key] in (int, "int") else float(raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: cannot parse {raw!r}") from exc
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> "AnalysisConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        return cls.from_text(text)
