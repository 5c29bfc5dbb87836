# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Template registry.

Built-in templates are generated procedurally as closed "pillow" garments:
a front panel at +z and a back panel at -z stitched along a shared outline.
The UV atlas is integral per side: the front chart fills the top half, the
back chart (mirrored in u, as seen from behind) fills the bottom half.

A template directory on disk holds `template.obj`, `landmarks.json` and an
optional `blendshapes/` folder of delta-OBJ files.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Tuple, Union

import numpy as np

from garmentex.errors import InvocationError, MeshError
from garmentex.geometry.mesh import (
    MAX_TEMPLATE_VERTICES,
    BlendshapeSet,
    TemplateMesh,
)
from garmentex.geometry.obj_io import (
    load_blendshapes,
    load_landmarks,
    load_obj,
    write_blendshape,
    write_landmarks,
    write_obj,
)

UV_MARGIN = 0.02


@dataclass(frozen=True)
class TemplateAssets:
    """A template mesh with its landmarks and blendshapes."""
    name: str
    mesh: TemplateMesh
    blendshapes: BlendshapeSet


def build_pillow(inside_fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
                 x_range: Tuple[float, float], y_range: Tuple[float, float],
                 cell_size: float, thickness: float,
                 landmarks_xy: Dict[str, Tuple[float, float]],
                 category: str) -> TemplateMesh:
    """
    Grid-triangulate the region `inside_fn` accepts, once per side.

    Outline vertices are shared by both sides and sit at z = 0; interior
    vertices sit at +thickness (front) or -thickness (back).
    """
    x0, x1 = x_range
    y0, y1 = y_range
    nx = int(round((x1 - x0) / cell_size))
    ny = int(round((y1 - y0) / cell_size))
    ci, cj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    centers_x = x0 + (ci + 0.5) * cell_size
    centers_y = y0 + (cj + 0.5) * cell_size
    keep = inside_fn(centers_x, centers_y)
    ci, cj = ci[keep], cj[keep]
    if not len(ci):
        raise MeshError("template outline contains no cells")

    def node(i, j):
        return i * (ny + 1) + j

    # a grid node is on the outline when some but not all of its four cells are kept
    padded = np.zeros((nx + 2, ny + 2), dtype=np.int64)
    padded[1:-1, 1:-1] = keep
    around = padded[:-1, :-1] + padded[1:, :-1] + padded[:-1, 1:] + padded[1:, 1:]
    node_outline = ((around > 0) & (around < 4)).ravel()

    n00, n10 = node(ci, cj), node(ci + 1, cj)
    n11, n01 = node(ci + 1, cj + 1), node(ci, cj + 1)
    # split each cell along the diagonal that avoids joining two outline nodes,
    # otherwise the shared outline would carry an edge of four faces
    flip = node_outline[n00] & node_outline[n11]
    if np.any(flip & node_outline[n10] & node_outline[n01]):
        raise MeshError("template outline is too thin for the cell size")
    flip = flip[:, None]
    grid_faces = np.concatenate([
        np.where(flip, np.stack([n00, n10, n01], 1), np.stack([n00, n10, n11], 1)),
        np.where(flip, np.stack([n10, n11, n01], 1), np.stack([n00, n11, n01], 1)),
    ])
    used = np.unique(grid_faces)
    front_id = np.full((nx + 1) * (ny + 1), -1, dtype=np.int64)
    front_id[used] = np.arange(len(used))
    front_faces = front_id[grid_faces]

    gx = x0 + (used // (ny + 1)) * cell_size
    gy = y0 + (used % (ny + 1)) * cell_size
    outline = node_outline[used]

    interior = np.flatnonzero(~outline)
    back_id = np.arange(len(used))
    back_id[interior] = len(used) + np.arange(len(interior))
    back_faces = back_id[front_faces][:, [0, 2, 1]]

    front_z = np.where(outline, 0.0, thickness)
    vertices = np.concatenate([
        np.stack([gx, gy, front_z], 1),
        np.stack([gx[interior], gy[interior], np.full(len(interior), -thickness)], 1),
    ])
    faces = np.concatenate([front_faces, back_faces])

    width, height = x1 - x0, y1 - y0
    scale = min((1.0 - 2 * UV_MARGIN) / width, (0.5 - 2 * UV_MARGIN) / height)
    u_front = UV_MARGIN + scale * (gx - x0)
    u_back = UV_MARGIN + scale * (x1 - gx)
    v_rel = scale * (gy - y0)
    uvs = np.concatenate([
        np.stack([u_front, 0.5 + UV_MARGIN + v_rel], 1),
        np.stack([u_back, UV_MARGIN + v_rel], 1),
    ])
    face_uvs = np.concatenate([front_faces, len(used) + front_faces[:, [0, 2, 1]]])

    outline_idx = np.flatnonzero(outline)
    landmarks = {}
    for name, (lx, ly) in landmarks_xy.items():
        d2 = (gx[outline_idx] - lx) ** 2 + (gy[outline_idx] - ly) ** 2
        landmarks[name] = int(outline_idx[np.argmin(d2)])

    return TemplateMesh(vertices, faces, np.clip(uvs, 0.0, 1.0), face_uvs, landmarks, category)


def _sleeve_bend(vertices: np.ndarray, side: float, angle: float, lift: float,
                 shoulder_x: float = 0.5, pivot_y: float = 0.2, ramp: float = 0.15) -> np.ndarray:
    """Delta that swings one sleeve about its shoulder pivot by `angle`."""
    x, y, z = vertices.T
    weight = np.clip((side * x - shoulder_x) / ramp, 0.0, 1.0)
    theta = side * angle * weight
    px, py = side * shoulder_x, pivot_y
    dx, dy = x - px, y - py
    cos, sin = np.cos(theta), np.sin(theta)
    bent = np.stack([px + cos * dx - sin * dy, py + sin * dx + cos * dy, z + lift * weight], 1)
    return bent - vertices


def build_tshirt(cell_size: float = 0.05, thickness: float = 0.04) -> TemplateAssets:
    """T-shaped garment with torso, two sleeves and three sleeve blendshapes."""
    def inside_fn(x, y):
        torso = (np.abs(x) < 0.5) & (y > -0.8) & (y < 0.4)
        sleeves = (np.abs(x) > 0.5) & (np.abs(x) < 1.0) & (y > 0.0) & (y < 0.4)
        return torso | sleeves

    landmarks_xy = {
        "collar": (0.0, 0.4),
        "left_shoulder": (-0.5, 0.4), "right_shoulder": (0.5, 0.4),
        "left_cuff_top": (-1.0, 0.4), "right_cuff_top": (1.0, 0.4),
        "left_cuff_bottom": (-1.0, 0.0), "right_cuff_bottom": (1.0, 0.0),
        "left_armpit": (-0.5, 0.0), "right_armpit": (0.5, 0.0),
        "left_hem": (-0.5, -0.8), "right_hem": (0.5, -0.8),
    }
    mesh = build_pillow(inside_fn, (-1.0, 1.0), (-0.8, 0.4), cell_size, thickness,
                        landmarks_xy, "tshirt")
    lift = 3.0 * thickness
    shapes = np.stack([
        _sleeve_bend(mesh.vertices, -1.0, np.deg2rad(120.0), lift),
        _sleeve_bend(mesh.vertices, 1.0, -np.deg2rad(120.0), lift),
        _sleeve_bend(mesh.vertices, -1.0, -np.deg2rad(25.0), 0.0)
        + _sleeve_bend(mesh.vertices, 1.0, np.deg2rad(25.0), 0.0),
    ])
    names = ["left_sleeve_bend", "right_sleeve_bend", "sleeve_lift"]
    return TemplateAssets("tshirt", mesh, BlendshapeSet(mesh, shapes, names))


def build_tshirt_hd(thickness: float = 0.02) -> TemplateAssets:
    """The tshirt at catalog density: 8,002 vertices and 16,000 faces."""
    assets = build_tshirt(cell_size=0.02, thickness=thickness)
    return TemplateAssets("tshirt_hd", assets.mesh, assets.blendshapes)


def build_panel(cell_size: float = 0.1, thickness: float = 0.02,
                half_size: float = 0.6) -> TemplateAssets:
    """Two-sided rectangle; the easiest geometry for round trips."""
    def inside_fn(x, y):
        return (np.abs(x) < half_size) & (np.abs(y) < half_size)

    h = half_size
    landmarks_xy = {
        "top_left": (-h, h), "top": (0.0, h), "top_right": (h, h),
        "left": (-h, 0.0), "right": (h, 0.0),
        "bottom_left": (-h, -h), "bottom": (0.0, -h), "bottom_right": (h, -h),
    }
    mesh = build_pillow(inside_fn, (-h, h), (-h, h), cell_size, thickness, landmarks_xy, "panel")
    return TemplateAssets("panel", mesh, BlendshapeSet(mesh, np.zeros((0, mesh.num_vertices, 3))))


def build_quad(half_size: float = 1.0) -> TemplateAssets:
    """Single-sided square at z = 0 with identity UV layout."""
    h = half_size
    vertices = np.array([[-h, -h, 0.0], [h, -h, 0.0], [h, h, 0.0], [-h, h, 0.0]])
    uvs = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    faces = np.array([[0, 1, 2], [0, 2, 3]])
    landmarks = {"bottom_left": 0, "bottom_right": 1, "top_right": 2, "top_left": 3}
    mesh = TemplateMesh(vertices, faces, uvs, faces.copy(), landmarks, "quad")
    return TemplateAssets("quad", mesh, BlendshapeSet(mesh, np.zeros((0, 4, 3))))


def build_strip(length: int = 20, cell_size: float = 0.1) -> TemplateAssets:
    """Flat 2 x length vertex ribbon."""
    i = np.arange(length)
    vertices = np.concatenate([
        np.stack([i * cell_size, np.zeros(length), np.zeros(length)], 1),
        np.stack([i * cell_size, np.full(length, cell_size), np.zeros(length)], 1),
    ])
    span = max((length - 1) * cell_size, cell_size)
    uvs = np.stack([vertices[:, 0] / span, vertices[:, 1] / span * 0.5], 1)
    a, b = i[:-1], i[1:]
    faces = np.concatenate([np.stack([a, b, b + length], 1), np.stack([a, b + length, a + length], 1)])
    mesh = TemplateMesh(vertices, faces, uvs, faces.copy(), {"start": 0, "end": length - 1}, "strip")
    return TemplateAssets("strip", mesh, BlendshapeSet(mesh, np.zeros((0, len(vertices), 3))))


TEMPLATES: Dict[str, Callable[..., TemplateAssets]] = {
    "tshirt": build_tshirt,
    "tshirt_hd": build_tshirt_hd,
    "panel": build_panel,
    "quad": build_quad,
    "strip": build_strip,
}


def load_template_dir(directory: Union[str, Path]) -> TemplateAssets:
    directory = Path(directory)
    mesh = load_obj(directory / "template.obj", category=directory.name)
    mesh = mesh.with_landmarks(load_landmarks(directory / "landmarks.json", mesh))
    shape_dir = directory / "blendshapes"
    paths = sorted(shape_dir.glob("*.obj")) if shape_dir.is_dir() else []
    return TemplateAssets(directory.name, mesh, load_blendshapes(mesh, paths))


def save_template_dir(assets: TemplateAssets, directory: Union[str, Path]):
    directory = Path(directory)
    write_obj(assets.mesh, directory / "template.obj")
    write_landmarks(assets.mesh.landmark_indices, directory / "landmarks.json")
    for name, delta in zip(assets.blendshapes.names, assets.blendshapes.shapes):
        write_blendshape(assets.mesh, delta, directory / "blendshapes" / f"{name}.obj")


def resolve_template(name_or_path: Union[str, Path], **kwargs) -> TemplateAssets:
    """Look up a built-in template by name, or load a template directory."""
    key = str(name_or_path)
    if key in TEMPLATES:
        assets = TEMPLATES[key](**kwargs)
        if assets.mesh.num_vertices >= MAX_TEMPLATE_VERTICES:
            raise MeshError(f"template {key} exceeds {MAX_TEMPLATE_VERTICES} vertices")
        return assets
    if Path(key).is_dir():
        return load_template_dir(key)
    raise InvocationError(f"unknown template {key!r}; known: {', '.join(sorted(TEMPLATES))}")
