"""Run configuration: flat ``key = value`` files with command-line overrides."""

from dataclasses import dataclass, fields, replace
from typing import Optional

MODELS = ("helfrich", "stretch", "tension")
FORMATS = ("csv", "json")
_TRUE = {"true", "1", "yes", "on"}
_FALSE = {"false", "0", "no", "off"}


class ConfigError(ValueError):
    """Invalid or inconsistent configuration."""


@dataclass(frozen=True)
class RunConfig:
    mu: float = 1.0
    d_modulus: Optional[float] = None
    gamma: float = 0.0
    alpha_s: float = 0.0
    beta_s: float = 0.0
    h0: float = 0.0
    radius: float = 1.0
    model: str = "helfrich"
    incompressible: bool = False
    lam: Optional[float] = None
    lambda_range: Optional[tuple] = None
    k: Optional[float] = None
    k_range: Optional[tuple] = None
    output_path: Optional[str] = None
    format: str = "csv"
    workers: int = 1

    def validate(self) -> "RunConfig":
        if not self.mu > 0.0:
            raise ConfigError("mu must be > 0")
        if not self.radius > 0.0:
            raise ConfigError("radius must be > 0")
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {', '.join(MODELS)}")
        if self.format not in FORMATS:
            raise ConfigError("format must be csv or json")
        if (self.d_modulus is None) == (not self.incompressible):
            raise ConfigError("supply exactly one of d_modulus or incompressible = true")
        if self.d_modulus is not None and self.d_modulus < 0.0:
            raise ConfigError("d_modulus must be >= 0")
        for name in ("gamma", "alpha_s", "beta_s"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be >= 0")
        if self.model == "stretch" and self.beta_s:
            raise ConfigError("model = stretch requires beta_s = 0")
        if self.model == "helfrich" and self.alpha_s:
            raise ConfigError("model = helfrich requires alpha_s = 0")
        if self.model == "tension" and (self.alpha_s or self.beta_s):
            raise ConfigError("model = tension requires alpha_s = beta_s = 0")
        if self.lam is not None and not self.lam > 0.0:
            raise ConfigError("lambda must be > 0")
        if self.k is not None and not self.k > 0.0:
            raise ConfigError("k must be > 0")
        if self.lambda_range is not None:
            _check_range("lambda_range", self.lambda_range, need_steps=False)
        if self.k_range is not None:
            _check_range("k_range", self.k_range, need_steps=True)
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        return self

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            val = getattr(self, f.name)
            if val is None:
                continue
            lines.append(f"{_KEY_OF.get(f.name, f.name)} = {_format_value(val)}")
        return "\n".join(lines) + "\n"

    def with_overrides(self, overrides: dict) -> "RunConfig":
        return replace(self, **_coerce_all(overrides))


def _check_range(name: str, rng: tuple, need_steps: bool) -> None:
    if len(rng) not in (2, 3) or (need_steps and len(rng) != 3):
        raise ConfigError(f"{name} needs {'lo, hi, steps' if need_steps else 'lo, hi[, steps]'}")
    lo, hi = rng[0], rng[1]
    single = len(rng) == 3 and rng[2] == 1
    if not (0.0 < lo < hi or (single and 0.0 < lo == hi)):
        raise ConfigError(f"{name} needs 0 < lo < hi")
    if len(rng) == 3 and (rng[2] != int(rng[2]) or rng[2] < 1):
        raise ConfigError(f"{name} steps must be a positive integer")


# config keys that differ from attribute names
_KEY_OF = {"lam": "lambda"}
_ATTR_OF = {v: k for k, v in _KEY_OF.items()}
_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_OPTIONAL = {f.name for f in fields(RunConfig) if f.default is None}


def _format_value(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, float):
        return repr(val)
    if isinstance(val, tuple):
        return ", ".join(_format_value(v) for v in val)
    return str(val)


def _parse_number(text: str, key: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse number {text!r}") from None


def _coerce(attr: str, raw) -> object:
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    if attr in _OPTIONAL and text.lower() in ("", "none"):
        return None
    if attr in ("model", "output_path", "format"):
        return text.lower() if attr != "output_path" else text
    if attr == "incompressible":
        low = text.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ConfigError(f"incompressible: expected true/false, got {text!r}")
    if attr == "workers":
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"workers: expected integer, got {text!r}") from None
    if attr in ("lambda_range", "k_range"):
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        vals = [_parse_number(p.strip(), attr) for p in parts]
        if len(vals) == 3:
            if vals[2] != int(vals[2]):
                raise ConfigError(f"{attr}: steps must be an integer")
            vals[2] = int(vals[2])
        return tuple(vals)
    return _parse_number(text, attr)


def _coerce_all(mapping: dict) -> dict:
    out = {}
    for key, raw in mapping.items():
        attr = _ATTR_OF.get(key, key)
        if attr not in _FIELD_TYPES:
            raise ConfigError(f"unknown key {key!r}")
        out[attr] = _coerce(attr, raw)
    return out


def parse_config_text(text: str) -> RunConfig:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in body.split("=", 1))
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = val
    return RunConfig(**_coerce_all(raw))


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
