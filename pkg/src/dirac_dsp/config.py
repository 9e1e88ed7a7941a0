"""Flat ``key = value`` run configuration.

Lines are ``key = value``; ``#`` starts a comment; blank lines are ignored.
Every key has a default (see ``data/default.conf``), and command-line flags
are applied on top with :func:`RunConfig.updated`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources
from pathlib import Path

from .model import PhysicalConstants, PotentialSpec
from .spectrum import ScanSettings

MODELS = ("dirac", "schrodinger")
BRANCHES = ("particle", "antiparticle", "all")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str = "dirac"
    Va: float = 0.0
    Vb: float = 0.0
    Sa: float = 0.0
    Sb: float = 0.0
    a: float = 0.01
    b: float = 0.02
    c: float = 137.0
    coarse_points: int = 20001
    refine_tol_energy: float = 1e-4
    tol_residual: float = 1e-8
    doublet_split_min: float = 1e-3
    dip_threshold: float = 1.0
    workers: int = 1
    branch: str = "particle"
    output: str = ""

    def validate(self) -> RunConfig:
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.branch not in BRANCHES:
            raise ConfigError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, (int, float)) and not math.isfinite(value):
                raise ConfigError(f"{f.name} must be finite, got {value!r}")
        try:
            self.spec()
            self.constants()
            self.settings()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def spec(self) -> PotentialSpec:
        return PotentialSpec(Va=self.Va, Vb=self.Vb, Sa=self.Sa, Sb=self.Sb, a=self.a, b=self.b)

    def model_spec(self) -> PotentialSpec:
        """The potential handed to the solver for the configured model."""
        spec = self.spec()
        return spec.nonrelativistic() if self.model == "schrodinger" else spec

    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(c=self.c)

    def settings(self) -> ScanSettings:
        return ScanSettings(
            coarse_points=self.coarse_points,
            refine_tol_energy=self.refine_tol_energy,
            tol_residual=self.tol_residual,
            doublet_split_min=self.doublet_split_min,
            dip_threshold=self.dip_threshold,
            workers=self.workers,
        )

    def updated(self, **overrides) -> RunConfig:
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **_coerce(given)).validate()

    def as_text(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in asdict(self).items())


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(raw: dict) -> dict:
    out = {}
    for key, value in raw.items():
        if key not in _TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        kind = _TYPES[key]
        try:
            if kind == "int":
                out[key] = int(value)
            elif kind == "float":
                out[key] = float(value)
            else:
                out[key] = str(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: cannot parse {value!r}") from exc
    return out


def parse_config(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        values[key] = value
    return _coerce(values)


def default_config_text() -> str:
    return resources.files("dirac_dsp").joinpath("data/default.conf").read_text()


def load_config(path: str | Path | None = None) -> RunConfig:
    """Defaults, then the packaged default file, then ``path`` if given."""
    cfg = replace(RunConfig(), **parse_config(default_config_text()))
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        cfg = replace(cfg, **parse_config(text))
    return cfg.validate()
