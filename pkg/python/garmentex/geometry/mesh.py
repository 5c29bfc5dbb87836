# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Garment template data model: fixed-topology triangle meshes with per-corner
UVs, named landmark vertices and linear blendshapes.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from garmentex.errors import DegenerateFaceError, MeshError, ShapeMismatchError

MAX_TEMPLATE_VERTICES = 10_000
AREA_EPS = 1e-20


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class TemplateMesh:
    """
    A garment template. Front faces +z in model units.

    `uvs` holds the texture-coordinate table and `face_uvs` indexes it per
    face corner, so a vertex on a seam can carry one UV per chart.
    """
    vertices: np.ndarray
    faces: np.ndarray
    uvs: np.ndarray
    face_uvs: np.ndarray
    landmark_indices: Dict[str, int] = field(default_factory=dict)
    category: str = "garment"

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=np.float64).reshape(-1, 3)
        faces = np.array(self.faces, dtype=np.int64).reshape(-1, 3)
        uvs = np.array(self.uvs, dtype=np.float64).reshape(-1, 2)
        face_uvs = np.array(self.face_uvs, dtype=np.int64).reshape(-1, 3)

        if faces.size and (faces.min() < 0 or faces.max() >= len(vertices)):
            raise MeshError("face index out of range")
        if face_uvs.shape != faces.shape:
            raise MeshError("face_uvs must have one UV index per face corner")
        if face_uvs.size and (face_uvs.min() < 0 or face_uvs.max() >= len(uvs)):
            raise MeshError("UV index out of range")
        if uvs.size and (uvs.min() < 0.0 or uvs.max() > 1.0):
            raise MeshError("UV coordinates must lie in [0, 1]")
        if not np.all(np.isfinite(vertices)):
            raise MeshError("vertices must be finite")
        landmarks = {str(k): int(v) for k, v in dict(self.landmark_indices).items()}
        for name, index in landmarks.items():
            if index < 0 or index >= len(vertices):
                raise MeshError(f"landmark {name!r} index {index} out of range")

        _check_manifold(faces, len(vertices))

        object.__setattr__(self, "vertices", _frozen(vertices))
        object.__setattr__(self, "faces", _frozen(faces))
        object.__setattr__(self, "uvs", _frozen(uvs))
        object.__setattr__(self, "face_uvs", _frozen(face_uvs))
        object.__setattr__(self, "landmark_indices", landmarks)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def corner_uvs(self) -> np.ndarray:
        """(F, 3, 2) UV coordinate of every face corner."""
        return self.uvs[self.face_uvs]

    @property
    def landmark_names(self) -> List[str]:
        return sorted(self.landmark_indices)

    def with_vertices(self, vertices: np.ndarray) -> "TemplateMesh":
        vertices = np.asarray(vertices, dtype=np.float64)
        if vertices.shape != self.vertices.shape:
            raise ShapeMismatchError(
                f"expected vertices of shape {self.vertices.shape}, got {vertices.shape}")
        return TemplateMesh(vertices, self.faces, self.uvs, self.face_uvs,
                            self.landmark_indices, self.category)

    def with_landmarks(self, landmarks: Dict[str, int]) -> "TemplateMesh":
        return TemplateMesh(self.vertices, self.faces, self.uvs, self.face_uvs,
                            landmarks, self.category)

    def scaled(self, scale: float) -> "TemplateMesh":
        return self.with_vertices(self.vertices * float(scale))


def _edge_keys(faces: np.ndarray, num_vertices: int):
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    edges = np.sort(edges, axis=1)
    owners = np.tile(np.arange(len(faces)), 3)
    keys = edges[:, 0] * max(num_vertices, 1) + edges[:, 1]
    return keys, owners


def _check_manifold(faces: np.ndarray, num_vertices: int):
    if not len(faces):
        return
    keys, _ = _edge_keys(faces, num_vertices)
    unique, counts = np.unique(keys, return_counts=True)
    if np.any(counts > 2):
        bad = unique[counts > 2][0]
        a, b = divmod(int(bad), max(num_vertices, 1))
        raise MeshError(f"edge ({a}, {b}) has more than two incident faces")


def check_nondegenerate(mesh: TemplateMesh, vertices: Optional[np.ndarray] = None):
    """Raise DegenerateFaceError naming the first zero-area face."""
    cross = face_cross(mesh, mesh.vertices if vertices is None else vertices)
    area2 = np.einsum("ij,ij->i", cross, cross)
    bad = np.flatnonzero(area2 <= AREA_EPS)
    if len(bad):
        raise DegenerateFaceError(int(bad[0]))


def face_cross(mesh: TemplateMesh, vertices: np.ndarray) -> np.ndarray:
    """Unnormalized face normals (b - a) x (c - a), shape (F, 3)."""
    vertices = np.asarray(vertices, dtype=np.float64)
    if vertices.shape != (mesh.num_vertices, 3):
        raise ShapeMismatchError(
            f"expected {mesh.num_vertices} vertices, got shape {vertices.shape}")
    a, b, c = (vertices[mesh.faces[:, i]] for i in range(3))
    return np.cross(b - a, c - a)


def face_normals(mesh: TemplateMesh, vertices: np.ndarray) -> np.ndarray:
    """Unit normal per face, oriented by face winding."""
    cross = face_cross(mesh, vertices)
    length = np.linalg.norm(cross, axis=1)
    bad = np.flatnonzero(length * length <= AREA_EPS)
    if len(bad):
        raise DegenerateFaceError(int(bad[0]))
    return cross / length[:, None]


def adjacent_face_pairs(mesh: TemplateMesh) -> np.ndarray:
    """(P, 2) face index pairs sharing an interior edge, each pair once."""
    if not mesh.num_faces:
        return np.zeros((0, 2), dtype=np.int64)
    keys, owners = _edge_keys(mesh.faces, mesh.num_vertices)
    order = np.argsort(keys, kind="stable")
    keys, owners = keys[order], owners[order]
    shared = np.flatnonzero(keys[1:] == keys[:-1])
    pairs = np.stack([owners[shared], owners[shared + 1]], axis=1)
    pairs = np.sort(pairs, axis=1)
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    return np.unique(pairs, axis=0)


def boundary_vertices(mesh: TemplateMesh) -> np.ndarray:
    """Indices of vertices lying on an edge with a single incident face."""
    keys, _ = _edge_keys(mesh.faces, mesh.num_vertices)
    unique, counts = np.unique(keys, return_counts=True)
    lonely = unique[counts == 1]
    n = max(mesh.num_vertices, 1)
    return np.unique(np.concatenate([lonely // n, lonely % n]))


def face_sides(mesh: TemplateMesh) -> np.ndarray:
    """+1 for faces whose rest normal points at the front camera, -1 otherwise."""
    cross = face_cross(mesh, mesh.vertices)
    return np.where(cross[:, 2] >= 0.0, 1, -1).astype(np.int64)


VIEW_SIDE = {"front": 1, "back": -1}


def facing_faces(mesh: TemplateMesh, view: str) -> np.ndarray:
    """
    Faces of the chart that faces the given view's camera.

    A closed garment projects to the same outline from either chart, so this
    subset has the full silhouette while its interior edges are not doubled by
    the coincident layer behind it. Single-sided meshes return every face.
    """
    sides = face_sides(mesh)
    facing = mesh.faces[sides == VIEW_SIDE[view]]
    return facing if len(facing) else mesh.faces


@dataclass(frozen=True)
class BlendshapeSet:
    """Linear shape space: base vertices plus per-shape vertex deltas."""
    base: TemplateMesh
    shapes: np.ndarray
    names: List[str] = field(default_factory=list)

    def __post_init__(self):
        shapes = np.array(self.shapes, dtype=np.float64)
        if shapes.size == 0:
            shapes = shapes.reshape(0, self.base.num_vertices, 3)
        if shapes.ndim != 3 or shapes.shape[1:] != (self.base.num_vertices, 3):
            raise ShapeMismatchError(
                f"blendshape deltas must be (S, {self.base.num_vertices}, 3), got {shapes.shape}")
        names = list(self.names) or [f"shape_{i}" for i in range(len(shapes))]
        if len(names) != len(shapes):
            raise ShapeMismatchError("one name per blendshape required")
        object.__setattr__(self, "shapes", _frozen(shapes))
        object.__setattr__(self, "names", names)

    @property
    def count(self) -> int:
        return len(self.shapes)


def apply_blendshapes(bs: BlendshapeSet, coeffs: Sequence[float]) -> np.ndarray:
    """v = base + sum_s coeff_s * delta_s."""
    coeffs = np.asarray(coeffs, dtype=np.float64).reshape(-1)
    if len(coeffs) != bs.count:
        raise ShapeMismatchError(
            f"expected {bs.count} blendshape coefficients, got {len(coeffs)}")
    if not bs.count:
        return bs.base.vertices.copy()
    return bs.base.vertices + np.einsum("s,snk->nk", coeffs, bs.shapes)
