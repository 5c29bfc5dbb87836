# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Flat TOML configuration models.

Every config is a pydantic model with `extra="forbid"`. Files hold one
`key = value` line per field; missing keys take defaults. `to_toml` writes
all fields in declaration order, and loading its output reproduces the
model exactly.
"""

import json
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Iterable, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from garmentex.errors import ConfigError, InvocationError, MissingInputError

C = TypeVar("C", bound="FlatConfig")


def _toml_scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_scalar(v) for v in value) + "]"
    raise ConfigError(f"cannot write {type(value).__name__} to a flat config")


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        parts.append(f"{where}: {item.get('msg')}")
    return "; ".join(parts)


def parse_scalar(text: str) -> Any:
    """Parse a TOML scalar; bare words fall back to strings."""
    try:
        return tomllib.loads(f"value = {text}")["value"]
    except tomllib.TOMLDecodeError:
        return text


class FlatConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    def to_toml(self) -> str:
        lines = [f"{name} = {_toml_scalar(getattr(self, name))}"
                 for name in type(self).model_fields]
        return "\n".join(lines) + "\n"

    def dump(self, path: Union[str, Path]):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_toml())

    @classmethod
    def from_mapping(cls: Type[C], data: Dict[str, Any]) -> C:
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid {cls.__name__}: {_describe(e)}")

    @classmethod
    def from_toml(cls: Type[C], text: str) -> C:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"cannot parse config: {e}")
        return cls.from_mapping(data)

    @classmethod
    def load(cls: Type[C], path: Union[str, Path]) -> C:
        path = Path(path)
        if not path.is_file():
            raise MissingInputError(f"config file not found: {path}")
        return cls.from_toml(path.read_text())

    def with_overrides(self: C, overrides: Iterable[str]) -> C:
        """Apply `key=value` strings on top of this config."""
        data = self.model_dump()
        for item in overrides:
            if "=" not in item:
                raise InvocationError(f"override {item!r} is not key=value")
            key, text = (s.strip() for s in item.split("=", 1))
            if key not in type(self).model_fields:
                raise InvocationError(f"unknown config key {key!r}")
            data[key] = parse_scalar(text)
        try:
            return type(self).model_validate(data)
        except ValidationError as e:
            raise InvocationError(f"invalid override: {_describe(e)}")
