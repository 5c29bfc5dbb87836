"""
Test fixtures for garment meshes, textures and rendered observations.
"""

import numpy as np
import pytest

from garmentex.fit.config import FitConfig
from garmentex.fit.observation import Observation
from garmentex.geometry.templates import build_panel, build_quad, build_strip, build_tshirt
from garmentex.harness.simulate import render_views
from garmentex.fit.scaling import mask_iou
from garmentex.render.camera import Camera, project
from garmentex.render.raster import render_mask
from garmentex.render.image import Image, TextureMap


def checker_texture(resolution: int = 32, cells: int = 4) -> TextureMap:
    """Red/blue checkerboard with a green ramp, so every channel varies."""
    cell = np.arange(resolution) * cells // resolution
    parity = ((cell[:, None] + cell[None, :]) % 2).astype(np.float64)
    ramp = np.linspace(0.1, 0.9, resolution)[None, :].repeat(resolution, 0)
    return TextureMap(np.stack([parity, ramp, 1.0 - parity], axis=-1))


def observations_for(assets, texture: TextureMap, image_size: int = 64,
                     world_extent: float = 1.25, coeffs=None):
    """Render both views of a template and wrap them as Observations."""
    if coeffs is None:
        coeffs = np.zeros(assets.blendshapes.count)
    views, masks, landmarks = render_views(assets, texture, np.asarray(coeffs), image_size,
                                           world_extent)
    return {view: Observation(views[view], Image(masks[view].astype(np.float64)),
                              landmarks[view], Camera(view, world_extent, image_size))
            for view in views}


def fit_report(mesh, vertices, observations):
    """Worst-view hard-silhouette IoU and worst landmark error in pixels."""
    ious, errors = [], []
    for obs in observations.values():
        mask = render_mask(vertices, mesh.faces, obs.camera)
        ious.append(mask_iou(mask, obs.silhouette.plane > 0.5))
        idx, targets = obs.landmark_arrays(mesh)
        errors.append(np.linalg.norm(project(obs.camera, vertices[idx]) - targets, axis=1).max())
    return min(ious), max(errors)


@pytest.fixture
def quad_assets():
    return build_quad()


@pytest.fixture
def panel_assets():
    return build_panel()


@pytest.fixture
def strip_assets():
    return build_strip()


@pytest.fixture(scope="session")
def tshirt_assets():
    return build_tshirt()


@pytest.fixture
def checker():
    return checker_texture()


@pytest.fixture
def panel_observations(panel_assets):
    return observations_for(panel_assets, checker_texture(32), image_size=64)


@pytest.fixture
def tiny_config():
    """A fit profile small enough for unit tests."""
    return FitConfig(image_size=64, texture_resolution=32, steps_stage1=5, steps_stage2=5,
                     scale_step=0.1, log_every=1)


def write_view_inputs(directory, assets, image_size: int = 32, world_extent: float = 1.25):
    """Write a template's rendered views as CLI inputs; returns the path arguments."""
    from garmentex.fit.observation import write_landmark_observations
    from garmentex.render.image import write_image

    observations = observations_for(assets, checker_texture(32), image_size, world_extent)
    paths = {}
    for view, observation in observations.items():
        paths[view] = directory / f"{view}.png"
        paths[f"mask-{view}"] = directory / f"{view}_mask.png"
        write_image(observation.image, paths[view])
        write_image(observation.silhouette, paths[f"mask-{view}"])
    paths["landmarks"] = directory / "landmarks.json"
    write_landmark_observations({v: o.landmarks_2d for v, o in observations.items()},
                                paths["landmarks"])
    return paths


def view_args(paths, views=("front", "back")):
    args = ["--landmarks", str(paths["landmarks"])]
    for view in views:
        args += [f"--{view}", str(paths[view]), f"--mask-{view}", str(paths[f"mask-{view}"])]
    return args
