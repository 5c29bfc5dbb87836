import numpy as np
import pytest

from garmentex.errors import DegenerateFaceError, MeshError, ShapeMismatchError
from garmentex.geometry import (
    BlendshapeSet,
    TemplateMesh,
    adjacent_face_pairs,
    apply_blendshapes,
    boundary_vertices,
    check_nondegenerate,
    face_normals,
    face_sides,
)


def square_mesh(z=0.0):
    vertices = np.array([[0, 0, z], [1, 0, z], [1, 1, z], [0, 1, z]], dtype=float)
    uvs = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    faces = np.array([[0, 1, 2], [0, 2, 3]])
    return TemplateMesh(vertices, faces, uvs, faces.copy(), {"corner": 0})


class TestTemplateMesh:
    def test_arrays_are_read_only(self):
        mesh = square_mesh()
        with pytest.raises(ValueError):
            mesh.vertices[0, 0] = 5.0

    def test_face_index_out_of_range(self):
        with pytest.raises(MeshError, match="face index"):
            TemplateMesh(np.zeros((3, 3)), [[0, 1, 3]], np.zeros((3, 2)), [[0, 1, 2]])

    def test_uv_outside_unit_square(self):
        with pytest.raises(MeshError, match="UV"):
            TemplateMesh(np.eye(3), [[0, 1, 2]], [[0, 0], [1.5, 0], [0, 1]], [[0, 1, 2]])

    def test_non_manifold_edge(self):
        vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1]], dtype=float)
        faces = [[0, 1, 2], [1, 0, 3], [0, 1, 4]]
        with pytest.raises(MeshError, match="more than two"):
            TemplateMesh(vertices, faces, np.zeros((1, 2)), np.zeros((3, 3), dtype=int))

    def test_landmark_out_of_range(self):
        mesh = square_mesh()
        with pytest.raises(MeshError, match="landmark"):
            mesh.with_landmarks({"far": 9})

    def test_with_vertices_checks_shape(self):
        with pytest.raises(ShapeMismatchError):
            square_mesh().with_vertices(np.zeros((3, 3)))

    def test_scaled(self):
        mesh = square_mesh().scaled(2.0)
        assert mesh.vertices[2].tolist() == [2.0, 2.0, 0.0]
        assert mesh.landmark_indices == {"corner": 0}


class TestTopology:
    def test_adjacent_pairs_and_boundary(self):
        mesh = square_mesh()
        assert adjacent_face_pairs(mesh).tolist() == [[0, 1]]
        assert boundary_vertices(mesh).tolist() == [0, 1, 2, 3]

    def test_normals_point_up(self):
        normals = face_normals(square_mesh(), square_mesh().vertices)
        np.testing.assert_allclose(normals, [[0, 0, 1], [0, 0, 1]])
        assert face_sides(square_mesh()).tolist() == [1, 1]

    def test_degenerate_face_named(self):
        mesh = square_mesh()
        collapsed = mesh.vertices.copy()
        collapsed[3] = collapsed[2]
        with pytest.raises(DegenerateFaceError) as info:
            check_nondegenerate(mesh, collapsed)
        assert info.value.face_index == 1


class TestBlendshapes:
    def test_linear_combination(self):
        mesh = square_mesh()
        lift = np.zeros((4, 3))
        lift[:, 2] = 1.0
        shift = np.zeros((4, 3))
        shift[:, 0] = 2.0
        bs = BlendshapeSet(mesh, np.stack([lift, shift]), ["lift", "shift"])
        out = apply_blendshapes(bs, [0.5, 0.25])
        np.testing.assert_allclose(out, mesh.vertices + [0.5, 0.0, 0.5])

    def test_coefficient_count(self):
        mesh = square_mesh()
        bs = BlendshapeSet(mesh, np.zeros((1, 4, 3)))
        assert bs.names == ["shape_0"]
        with pytest.raises(ShapeMismatchError):
            apply_blendshapes(bs, [1.0, 2.0])

    def test_empty_set_returns_base(self):
        mesh = square_mesh()
        bs = BlendshapeSet(mesh, np.zeros((0, 4, 3)))
        np.testing.assert_array_equal(apply_blendshapes(bs, []), mesh.vertices)
