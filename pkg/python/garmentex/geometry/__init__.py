# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .mesh import (
    MAX_TEMPLATE_VERTICES,
    VIEW_SIDE,
    BlendshapeSet,
    TemplateMesh,
    adjacent_face_pairs,
    apply_blendshapes,
    boundary_vertices,
    check_nondegenerate,
    face_cross,
    face_normals,
    face_sides,
    facing_faces,
)
from .obj_io import (
    load_blendshapes,
    load_landmarks,
    load_obj,
    read_obj_arrays,
    write_blendshape,
    write_landmarks,
    write_obj,
)
from .templates import (
    TEMPLATES,
    TemplateAssets,
    build_panel,
    build_quad,
    build_strip,
    build_tshirt,
    build_tshirt_hd,
    load_template_dir,
    resolve_template,
    save_template_dir,
)
from .triangles import barycentric, bbox_cells, inside
from .uv import (
    DomainMask,
    domain_from_corner_uvs,
    rasterize_uv_domain,
    texel_centers_uv,
    uv_to_texel,
)

__all__ = [
    "MAX_TEMPLATE_VERTICES",
    "VIEW_SIDE",
    "BlendshapeSet",
    "TemplateMesh",
    "adjacent_face_pairs",
    "apply_blendshapes",
    "boundary_vertices",
    "check_nondegenerate",
    "face_cross",
    "face_normals",
    "face_sides",
    "facing_faces",
    "load_blendshapes",
    "load_landmarks",
    "load_obj",
    "read_obj_arrays",
    "write_blendshape",
    "write_landmarks",
    "write_obj",
    "TEMPLATES",
    "TemplateAssets",
    "build_panel",
    "build_quad",
    "build_strip",
    "build_tshirt",
    "build_tshirt_hd",
    "load_template_dir",
    "resolve_template",
    "save_template_dir",
    "barycentric",
    "bbox_cells",
    "inside",
    "DomainMask",
    "domain_from_corner_uvs",
    "rasterize_uv_domain",
    "texel_centers_uv",
    "uv_to_texel",
]
