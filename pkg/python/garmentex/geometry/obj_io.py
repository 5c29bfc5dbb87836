# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
ASCII OBJ and landmark JSON reading/writing.

Supported OBJ records: `v x y z`, `vt u v`, and triangulated `f v/vt ...`
faces (`v/vt/vn` accepted, normals ignored). Other records are skipped.
"""

import json
import os
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from garmentex.errors import (
    LandmarkError,
    MissingInputError,
    ObjParseError,
    ShapeMismatchError,
)
from garmentex.geometry.mesh import BlendshapeSet, TemplateMesh, check_nondegenerate

PathLike = Union[str, os.PathLike]


def _resolve_index(token: str, count: int, line_number: int, kind: str) -> int:
    try:
        index = int(token)
    except ValueError:
        raise ObjParseError(f"bad {kind} index {token!r}", line_number)
    if index < 0:
        index = count + index
    else:
        index -= 1
    if index < 0 or index >= count:
        raise ObjParseError(f"{kind} index {token} out of range", line_number)
    return index


def _floats(tokens: Sequence[str], n: int, line_number: int, kind: str) -> List[float]:
    if len(tokens) < n:
        raise ObjParseError(f"{kind} record needs {n} values", line_number)
    try:
        return [float(t) for t in tokens[:n]]
    except ValueError as e:
        raise ObjParseError(f"bad {kind} value: {e}", line_number)


def read_obj_arrays(path: PathLike):
    """Parse an OBJ into (vertices, uvs, faces, face_uvs) arrays."""
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"OBJ file not found: {path}")

    vertices: List[List[float]] = []
    uvs: List[List[float]] = []
    faces: List[List[int]] = []
    face_uvs: List[List[int]] = []
    with open(path, "r") as objf:
        for line_number, line in enumerate(objf, start=1):
            toks = line.split()
            if not toks or toks[0].startswith("#"):
                continue
            if toks[0] == "v":
                vertices.append(_floats(toks[1:], 3, line_number, "vertex"))
            elif toks[0] == "vt":
                uvs.append(_floats(toks[1:], 2, line_number, "texture coordinate"))
            elif toks[0] == "f":
                corners = toks[1:]
                if len(corners) != 3:
                    raise ObjParseError(
                        f"face has {len(corners)} corners, only triangles are supported",
                        line_number)
                fv, ft = [], []
                for corner in corners:
                    parts = corner.split("/")
                    if len(parts) < 2 or not parts[1]:
                        raise ObjParseError(
                            f"face corner {corner!r} has no texture coordinate", line_number)
                    fv.append(_resolve_index(parts[0], len(vertices), line_number, "vertex"))
                    ft.append(_resolve_index(parts[1], len(uvs), line_number,
                                             "texture coordinate"))
                faces.append(fv)
                face_uvs.append(ft)

    if not uvs:
        raise ObjParseError("no texture coordinates (vt) in file")
    return (np.array(vertices, dtype=np.float64).reshape(-1, 3),
            np.array(uvs, dtype=np.float64).reshape(-1, 2),
            np.array(faces, dtype=np.int64).reshape(-1, 3),
            np.array(face_uvs, dtype=np.int64).reshape(-1, 3))


def load_obj(path: PathLike, category: str = "garment") -> TemplateMesh:
    """Load a triangulated, UV-mapped OBJ. Landmarks are loaded separately."""
    vertices, uvs, faces, face_uvs = read_obj_arrays(path)
    mesh = TemplateMesh(vertices, faces, uvs, face_uvs, {}, category)
    check_nondegenerate(mesh)
    return mesh


def _format(value: float, precision: Optional[int]) -> str:
    if precision is None:
        return repr(float(value))
    return f"{value:.{precision}f}"


def write_obj(mesh: TemplateMesh, path: PathLike, vertices: Optional[np.ndarray] = None,
              precision: Optional[int] = None):
    """
    Write a mesh as ASCII OBJ.

    With precision=None every float is written with its shortest exact
    representation, so load/write/load is bitwise stable.
    """
    vertices = mesh.vertices if vertices is None else np.asarray(vertices, dtype=np.float64)
    if vertices.shape != mesh.vertices.shape:
        raise ShapeMismatchError("vertex array does not match mesh")
    lines = [f"# garmentex {mesh.category}"]
    lines += [f"v {_format(x, precision)} {_format(y, precision)} {_format(z, precision)}"
              for x, y, z in vertices]
    lines += [f"vt {_format(u, precision)} {_format(v, precision)}" for u, v in mesh.uvs]
    lines += [f"f {a + 1}/{ta + 1} {b + 1}/{tb + 1} {c + 1}/{tc + 1}"
              for (a, b, c), (ta, tb, tc) in zip(mesh.faces, mesh.face_uvs)]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def load_landmarks(path: PathLike, mesh: Optional[TemplateMesh] = None) -> Dict[str, int]:
    """Read {"landmarks": {"name": vertexIndex}} and validate against mesh."""
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"landmark file not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise LandmarkError(f"invalid JSON in {path}: {e}")
    raw = payload.get("landmarks") if isinstance(payload, dict) else None
    if not isinstance(raw, dict):
        raise LandmarkError(f"{path} has no 'landmarks' object")
    landmarks = {}
    for name, index in raw.items():
        if not isinstance(index, int) or isinstance(index, bool):
            raise LandmarkError(f"landmark {name!r} index must be an integer")
        if mesh is not None and not 0 <= index < mesh.num_vertices:
            raise LandmarkError(f"landmark {name!r} index {index} out of range")
        landmarks[str(name)] = index
    return landmarks


def write_landmarks(landmarks: Dict[str, int], path: PathLike):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"landmarks": dict(sorted(landmarks.items()))}, indent=2) + "\n")


def write_blendshape(base: TemplateMesh, delta: np.ndarray, path: PathLike):
    """Write a delta-OBJ: same topology, vertex records hold target - base."""
    write_obj(base, path, vertices=np.asarray(delta, dtype=np.float64))


def load_blendshapes(base: TemplateMesh, paths: Sequence[PathLike]) -> BlendshapeSet:
    """Read delta-OBJ files; topology must match the base exactly."""
    deltas, names = [], []
    for p in paths:
        vertices, _, faces, _ = read_obj_arrays(p)
        if vertices.shape != base.vertices.shape or not np.array_equal(faces, base.faces):
            raise ShapeMismatchError(f"blendshape {p} does not share the base topology")
        deltas.append(vertices)
        names.append(Path(p).stem)
    shapes = np.stack(deltas) if deltas else np.zeros((0, base.num_vertices, 3))
    return BlendshapeSet(base, shapes, names)
