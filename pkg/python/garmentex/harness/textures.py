# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Procedural texture generator used as the ground-truth source for the
synthetic corpus.

Two palette colors are drawn from opposite ends of [0, 1] per channel so
every recipe spans at least MIN_CONTRAST of dynamic range.
"""

from typing import Callable, Dict, Literal, Optional, Union

import numpy as np
from pydantic import Field

from garmentex.config import FlatConfig
from garmentex.errors import InvocationError
from garmentex.geometry.uv import DomainMask
from garmentex.render.image import TextureMap

MIN_CONTRAST = 0.3

RecipeKind = Literal["stripes", "checker", "gradient", "blobs", "mixed"]


class TextureRecipe(FlatConfig):
    kind: RecipeKind = "mixed"
    checker_cells: int = Field(8, ge=1)
    stripe_period_min: float = Field(0.05, gt=0)
    stripe_period_max: float = Field(0.15, gt=0)
    blob_count_min: int = Field(4, ge=1)
    blob_count_max: int = Field(10, ge=1)
    blob_radius_min: float = Field(0.04, gt=0)
    blob_radius_max: float = Field(0.12, gt=0)


def _palette(rng: np.random.Generator):
    dark = rng.uniform(0.0, 0.35, 3)
    light = rng.uniform(0.65, 1.0, 3)
    if rng.random() < 0.5:
        return dark, light
    return light, dark


def _grid(resolution: int):
    t = (np.arange(resolution) + 0.5) / resolution
    return np.meshgrid(t, t)


def _mix(a: np.ndarray, b: np.ndarray, t: np.ndarray) -> np.ndarray:
    return a * (1.0 - t[:, :, None]) + b * t[:, :, None]


def checker(recipe: TextureRecipe, resolution: int, rng: np.random.Generator) -> np.ndarray:
    a, b = _palette(rng)
    cell = np.arange(resolution) * recipe.checker_cells // resolution
    parity = (cell[:, None] + cell[None, :]) % 2
    return _mix(a, b, parity.astype(np.float64))


def stripes(recipe: TextureRecipe, resolution: int, rng: np.random.Generator) -> np.ndarray:
    a, b = _palette(rng)
    x, y = _grid(resolution)
    angle = rng.uniform(0.0, np.pi)
    period = rng.uniform(recipe.stripe_period_min, recipe.stripe_period_max)
    phase = rng.uniform(0.0, 1.0)
    s = (x * np.cos(angle) + y * np.sin(angle)) / period + phase
    return _mix(a, b, (np.floor(s) % 2).astype(np.float64))


def gradient(recipe: TextureRecipe, resolution: int, rng: np.random.Generator) -> np.ndarray:
    a, b = _palette(rng)
    x, y = _grid(resolution)
    angle = rng.uniform(0.0, 2.0 * np.pi)
    s = (x - 0.5) * np.cos(angle) + (y - 0.5) * np.sin(angle)
    s = (s - s.min()) / max(s.max() - s.min(), 1e-12)
    return _mix(a, b, s)


def blobs(recipe: TextureRecipe, resolution: int, rng: np.random.Generator) -> np.ndarray:
    base, accent = _palette(rng)
    x, y = _grid(resolution)
    out = np.broadcast_to(base, (resolution, resolution, 3)).copy()
    count = int(rng.integers(recipe.blob_count_min, recipe.blob_count_max + 1))
    for _ in range(count):
        cx, cy = rng.uniform(0.0, 1.0, 2)
        radius = rng.uniform(recipe.blob_radius_min, recipe.blob_radius_max)
        color = accent if rng.random() < 0.6 else rng.uniform(0.0, 1.0, 3)
        weight = np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * radius * radius))
        out = _mix(out, np.broadcast_to(color, out.shape), weight)
    # every blob landed near the base color
    if np.max(np.ptp(out.reshape(-1, 3), axis=0)) < MIN_CONTRAST:
        out = _mix(out, np.broadcast_to(accent, out.shape), (x > 0.5).astype(np.float64))
    return out


GENERATORS: Dict[str, Callable[[TextureRecipe, int, np.random.Generator], np.ndarray]] = {
    "checker": checker,
    "stripes": stripes,
    "gradient": gradient,
    "blobs": blobs,
}


def gen_texture(recipe: Union[str, TextureRecipe], resolution: int, seed: int,
                domain: Optional[DomainMask] = None) -> TextureMap:
    """Deterministic procedural texture; zero outside `domain` when given."""
    if isinstance(recipe, str):
        if recipe not in GENERATORS and recipe != "mixed":
            raise InvocationError(f"unknown texture recipe {recipe!r}")
        recipe = TextureRecipe(kind=recipe)
    rng = np.random.default_rng(seed)
    kind = recipe.kind
    if kind == "mixed":
        kind = sorted(GENERATORS)[int(rng.integers(len(GENERATORS)))]
    values = GENERATORS[kind](recipe, resolution, rng)
    if domain is not None:
        values = np.where(domain.inside[:, :, None], values, 0.0)
    return TextureMap(values)
