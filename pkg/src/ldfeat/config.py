"""Run configuration shared by feature extraction, evaluation and the CLI."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields

from .graph import Direction
from .labelfeat import LiftMode, MissingPolicy

MASKING = ("transductive", "fold-masked")
AVERAGING = ("binary", "macro")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    direction: str = "undirected"
    lift_mode: str = "augmented"
    masking: str = "transductive"
    missing: str = "missing"
    label_fraction: float = 1.0
    folds: int = 10
    iterations: int = 10
    weight_threshold: float = 100.0
    average: str = "binary"
    seed: int = 42
    threads: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "direction", Direction.parse(self.direction).value)
            object.__setattr__(self, "lift_mode", LiftMode(self.lift_mode).value)
            object.__setattr__(self, "missing", MissingPolicy(self.missing).value)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.masking not in MASKING:
            raise ConfigError(f"masking must be one of {MASKING}, got {self.masking!r}")
        if self.average not in AVERAGING:
            raise ConfigError(f"average must be one of {AVERAGING}, got {self.average!r}")
        if not 0.0 < self.label_fraction <= 1.0:
            raise ConfigError("label_fraction must be in (0, 1]")
        if self.folds < 2:
            raise ConfigError("folds must be at least 2")
        if self.iterations < 1:
            raise ConfigError("iterations must be at least 1")
        if not 0.0 < self.weight_threshold <= 100.0:
            raise ConfigError("weight_threshold must be in (0, 100]")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    def lines(self) -> list[str]:
        return [f"{f.name} = {getattr(self, f.name)}" for f in fields(self)]

    def dumps(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    @classmethod
    def from_mapping(cls, values: dict) -> "RunConfig":
        kinds = {f.name: f.type for f in fields(cls)}
        parsed = {}
        for key, raw in values.items():
            key = key.strip().replace("-", "_")
            if key not in kinds:
                raise ConfigError(f"unknown config key {key!r}")
            parsed[key] = _coerce(kinds[key], raw, key)
        return cls(**parsed)

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        values = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith(("#", "%")):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
        return cls.from_mapping(values)

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def _coerce(kind, raw, key):
    if not isinstance(raw, str):
        return raw
    try:
        if kind in ("int", int):
            return int(raw)
        if kind in ("float", float):
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return raw
