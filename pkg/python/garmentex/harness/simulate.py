# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Synthetic coarse/ground-truth pair generation.

Each sample draws a procedural texture and blendshape coefficients from
its own generator seeded with (spec.seed, sample index), renders the
deformed template from the front and back, and runs Phase I on the
renders. Samples are independent and the output is byte-identical for a
fixed spec regardless of worker count.

On disk every sample is a directory holding gt.png, front.png, back.png,
front_mask.png, back_mask.png, coarse.png, coverage.npy (raw weights),
coverage.png (normalized, for viewing) and meta.json.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import Field, model_validator

from garmentex import get_logger
from garmentex.config import FlatConfig
from garmentex.errors import DatasetError, GarmentexError, MissingInputError
from garmentex.fit.config import FitConfig
from garmentex.fit.observation import Observation
from garmentex.fit.pipeline import phase1
from garmentex.geometry.mesh import apply_blendshapes
from garmentex.geometry.templates import TemplateAssets, resolve_template
from garmentex.geometry.uv import rasterize_uv_domain
from garmentex.harness.batch import run_batch
from garmentex.harness.textures import RecipeKind, TextureRecipe, gen_texture
from garmentex.render.camera import Camera, project
from garmentex.render.image import (
    Image,
    TextureMap,
    read_image,
    read_mask,
    read_texture,
    write_image,
    write_mask,
)
from garmentex.render.raster import render_mask
from garmentex.render.textured import CoverageMap, read_coverage, render_textured, write_coverage

PathLike = Union[str, Path]


class SimSpec(FlatConfig):
    """
    Corpus recipe. Each sample draws its texture parameters from the ranges
    below: checker cell count and stripe period and blob count once per
    sample, blob radii once per blob.
    """
    templates: List[str] = Field(default_factory=lambda: ["tshirt"])
    samples: int = Field(20, ge=1)
    recipe: RecipeKind = "mixed"
    checker_cells_min: int = Field(4, ge=1)
    checker_cells_max: int = Field(12, ge=1)
    stripe_period_min: float = Field(0.05, gt=0)
    stripe_period_max: float = Field(0.15, gt=0)
    blob_count_min: int = Field(4, ge=1)
    blob_count_max: int = Field(10, ge=1)
    blob_radius_min: float = Field(0.04, gt=0)
    blob_radius_max: float = Field(0.12, gt=0)
    image_size: int = Field(128, ge=16)
    coeff_lo: float = Field(0.1, ge=0)
    coeff_hi: float = Field(1.0, ge=0)
    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_range(self):
        if self.coeff_lo > self.coeff_hi:
            raise ValueError("coeff_lo must not exceed coeff_hi")
        for name in ("checker_cells", "stripe_period", "blob_count", "blob_radius"):
            if getattr(self, f"{name}_min") > getattr(self, f"{name}_max"):
                raise ValueError(f"{name}_min must not exceed {name}_max")
        if not self.templates:
            raise ValueError("at least one template is required")
        return self

    def draw_recipe(self, rng: np.random.Generator) -> TextureRecipe:
        period = float(rng.uniform(self.stripe_period_min, self.stripe_period_max))
        count = int(rng.integers(self.blob_count_min, self.blob_count_max + 1))
        cells = int(rng.integers(self.checker_cells_min, self.checker_cells_max + 1))
        return TextureRecipe(kind=self.recipe, checker_cells=cells,
                             stripe_period_min=period, stripe_period_max=period,
                             blob_count_min=count, blob_count_max=count,
                             blob_radius_min=self.blob_radius_min,
                             blob_radius_max=self.blob_radius_max)


@dataclass(frozen=True)
class SampleRecord:
    name: str
    meta: Dict
    gt: TextureMap
    views: Dict[str, Image]
    masks: Dict[str, np.ndarray]
    coarse: TextureMap
    coverage: CoverageMap

    @property
    def template(self) -> str:
        return self.meta["template"]

    @property
    def landmarks(self) -> Dict[str, Dict[str, np.ndarray]]:
        return {view: {n: np.asarray(xy) for n, xy in points.items()}
                for view, points in self.meta["landmarks"].items()}

    def observations(self, world_extent: float) -> Dict[str, Observation]:
        size = self.meta["image_size"]
        landmarks = self.landmarks
        return {view: Observation(self.views[view], Image(self.masks[view].astype(np.float64)),
                                  landmarks[view], Camera(view, world_extent, size))
                for view in ("front", "back")}


@dataclass(frozen=True)
class SampleFailure:
    name: str
    kind: str
    message: str


@dataclass(frozen=True)
class SimResult:
    records: List[SampleRecord]
    failures: List[SampleFailure] = field(default_factory=list)


def sample_name(template: str, index: int) -> str:
    return f"{template}_{index:04d}"


def render_views(assets: TemplateAssets, texture: TextureMap, coeffs: np.ndarray, image_size: int,
                 world_extent: float):
    """Forward-render a blendshaped template: images, masks and landmark pixels."""
    mesh = assets.mesh
    vertices = apply_blendshapes(assets.blendshapes, coeffs)
    names = mesh.landmark_names
    idx = [mesh.landmark_indices[n] for n in names]
    views, masks, landmarks = {}, {}, {}
    for camera in Camera.pair(world_extent, image_size):
        views[camera.view] = render_textured(vertices, mesh.faces, mesh.corner_uvs, texture, camera)
        masks[camera.view] = render_mask(vertices, mesh.faces, camera)
        pix = project(camera, vertices[idx])
        landmarks[camera.view] = {n: [float(v) for v in p] for n, p in zip(names, pix)}
    return views, masks, landmarks


def simulate_sample(job: Tuple[str, str, str, int]):
    """Worker entry: (spec toml, config toml, template, index) -> record or failure."""
    spec_text, config_text, template, index = job
    spec = SimSpec.from_toml(spec_text)
    config = FitConfig.from_toml(config_text)
    name = sample_name(template, index)
    try:
        rng = np.random.default_rng([spec.seed, index])
        assets = resolve_template(template)
        domain = rasterize_uv_domain(assets.mesh, config.texture_resolution)
        texture_seed = int(rng.integers(2 ** 31))
        coeffs = rng.uniform(spec.coeff_lo, spec.coeff_hi, assets.blendshapes.count)
        recipe = spec.draw_recipe(rng)
        gt = gen_texture(recipe, config.texture_resolution, texture_seed, domain)

        views, masks, landmarks = render_views(assets, gt, coeffs, spec.image_size,
                                               config.world_extent)
        observations = {
            view: Observation(views[view], Image(masks[view].astype(np.float64)),
                              landmarks[view], Camera(view, config.world_extent, spec.image_size))
            for view in views
        }
        result = phase1(assets.mesh, observations, config)
    except GarmentexError as e:
        return SampleFailure(name, type(e).__name__, str(e))

    meta = {
        "name": name,
        "template": template,
        "index": index,
        "seed": spec.seed,
        "texture_seed": texture_seed,
        "recipe": spec.recipe,
        "recipe_params": recipe.model_dump(exclude={"kind"}),
        "coeffs": [float(c) for c in coeffs],
        "scale": result.scale,
        "image_size": spec.image_size,
        "texture_resolution": config.texture_resolution,
        "world_extent": config.world_extent,
        "landmarks": landmarks,
    }
    return SampleRecord(name, meta, gt, views, masks, result.coarse, result.coverage)


def write_sample(record: SampleRecord, directory: PathLike) -> Path:
    path = Path(directory) / record.name
    path.mkdir(parents=True, exist_ok=True)
    write_image(record.gt, path / "gt.png")
    for view in ("front", "back"):
        write_image(record.views[view], path / f"{view}.png")
        write_mask(record.masks[view], path / f"{view}_mask.png")
    write_image(record.coarse, path / "coarse.png")
    write_coverage(record.coverage, path / "coverage.npy")
    write_image(record.coverage.normalized(), path / "coverage.png")
    (path / "meta.json").write_text(json.dumps(record.meta, indent=2, sort_keys=True) + "\n")
    get_logger().artifact("sample written", {"path": str(path)})
    return path


def load_sample(directory: PathLike) -> SampleRecord:
    path = Path(directory)
    meta_path = path / "meta.json"
    if not meta_path.is_file():
        raise DatasetError(f"{path} has no meta.json")
    try:
        meta = json.loads(meta_path.read_text())
        views = {view: read_image(path / f"{view}.png") for view in ("front", "back")}
        masks = {view: read_mask(path / f"{view}_mask.png") for view in ("front", "back")}
        gt = read_texture(path / "gt.png")
        coarse = read_texture(path / "coarse.png")
        coverage = read_coverage(path / "coverage.npy")
    except MissingInputError as e:
        raise DatasetError(f"incomplete sample {path}: {e}")
    except (json.JSONDecodeError, KeyError) as e:
        raise DatasetError(f"bad meta.json in {path}: {e}")
    if coverage.resolution != coarse.resolution:
        raise DatasetError(f"coverage and coarse texture sizes differ in {path}")
    return SampleRecord(meta["name"], meta, gt, views, masks, coarse, coverage)


def load_dataset(directory: PathLike) -> List[SampleRecord]:
    root = Path(directory)
    if not root.is_dir():
        raise MissingInputError(f"dataset directory not found: {root}")
    samples = sorted(p for p in root.iterdir() if (p / "meta.json").is_file())
    if not samples:
        raise DatasetError(f"dataset {root} is empty")
    return [load_sample(p) for p in samples]


def simulate_pairs(spec: SimSpec, config: FitConfig, out_dir: Optional[PathLike] = None,
                   workers: Optional[int] = None) -> SimResult:
    logger = get_logger()
    jobs = [(spec.to_toml(), config.to_toml(), template, index)
            for template in spec.templates for index in range(spec.samples)]
    logger.info("simulating", {"samples": len(jobs), "templates": spec.templates})
    outcomes = run_batch(jobs, simulate_sample, workers)

    records = [o for o in outcomes if isinstance(o, SampleRecord)]
    failures = [o for o in outcomes if isinstance(o, SampleFailure)]
    for failure in failures:
        logger.warning("sample failed", {"name": failure.name, "kind": failure.kind,
                                         "message": failure.message})
    if out_dir is not None:
        root = Path(out_dir)
        root.mkdir(parents=True, exist_ok=True)
        spec.dump(root / "spec.toml")
        config.dump(root / "fit.toml")
        for record in records:
            write_sample(record, root)
    logger.info("simulation done", {"written": len(records), "failed": len(failures)})
    return SimResult(records, failures)
