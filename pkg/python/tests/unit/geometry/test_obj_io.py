import numpy as np
import pytest

from garmentex.errors import LandmarkError, MissingInputError, ObjParseError, ShapeMismatchError
from garmentex.geometry import (
    build_panel,
    load_blendshapes,
    load_landmarks,
    load_obj,
    write_blendshape,
    write_landmarks,
    write_obj,
)

TRIANGLE = """\
# one triangle
v 0 0 0
v 1 0 0
v 0 1 0
vt 0 0
vt 1 0
vt 0 1
vn 0 0 1
f 1/1/1 2/2/1 3/3/1
"""


def write(tmp_path, text, name="mesh.obj"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadObj:
    def test_triangle(self, tmp_path):
        mesh = load_obj(write(tmp_path, TRIANGLE))
        assert mesh.num_vertices == 3
        assert mesh.faces.tolist() == [[0, 1, 2]]
        assert mesh.corner_uvs[0].tolist() == [[0, 0], [1, 0], [0, 1]]

    def test_negative_indices(self, tmp_path):
        text = TRIANGLE.replace("f 1/1/1 2/2/1 3/3/1", "f -3/-3 -2/-2 -1/-1")
        assert load_obj(write(tmp_path, text)).faces.tolist() == [[0, 1, 2]]

    def test_quad_rejected_with_line_number(self, tmp_path):
        text = TRIANGLE.replace("f 1/1/1 2/2/1 3/3/1", "v 1 1 0\nf 1/1 2/2 4/3 3/3")
        with pytest.raises(ObjParseError, match="line 10"):
            load_obj(write(tmp_path, text))

    def test_face_without_uv(self, tmp_path):
        text = TRIANGLE.replace("f 1/1/1 2/2/1 3/3/1", "f 1 2 3")
        with pytest.raises(ObjParseError, match="texture coordinate"):
            load_obj(write(tmp_path, text))

    def test_index_out_of_range(self, tmp_path):
        text = TRIANGLE.replace("f 1/1/1 2/2/1 3/3/1", "f 1/1 2/2 7/3")
        with pytest.raises(ObjParseError, match="out of range"):
            load_obj(write(tmp_path, text))

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingInputError):
            load_obj(tmp_path / "absent.obj")

    def test_write_then_load_is_exact(self, tmp_path):
        mesh = build_panel().mesh
        moved = mesh.vertices + np.array([1 / 3, -2 / 7, 1e-9])
        write_obj(mesh, tmp_path / "a.obj", vertices=moved)
        again = load_obj(tmp_path / "a.obj")
        np.testing.assert_array_equal(again.vertices, moved)
        np.testing.assert_array_equal(again.faces, mesh.faces)
        np.testing.assert_array_equal(again.corner_uvs, mesh.corner_uvs)


class TestLandmarks:
    def test_write_load(self, tmp_path):
        write_landmarks({"b": 2, "a": 0}, tmp_path / "lm.json")
        assert load_landmarks(tmp_path / "lm.json") == {"a": 0, "b": 2}

    def test_index_validated_against_mesh(self, tmp_path):
        mesh = build_panel().mesh
        write_landmarks({"far": mesh.num_vertices}, tmp_path / "lm.json")
        with pytest.raises(LandmarkError, match="out of range"):
            load_landmarks(tmp_path / "lm.json", mesh)

    def test_non_integer_index(self, tmp_path):
        (tmp_path / "lm.json").write_text('{"landmarks": {"a": 1.5}}')
        with pytest.raises(LandmarkError):
            load_landmarks(tmp_path / "lm.json")


class TestBlendshapeFiles:
    def test_delta_obj(self, tmp_path):
        mesh = build_panel().mesh
        delta = np.zeros_like(mesh.vertices)
        delta[:, 1] = 0.25
        write_blendshape(mesh, delta, tmp_path / "raise.obj")
        shapes = load_blendshapes(mesh, [tmp_path / "raise.obj"])
        assert shapes.names == ["raise"]
        np.testing.assert_array_equal(shapes.shapes[0], delta)

    def test_topology_mismatch(self, tmp_path):
        write(tmp_path, TRIANGLE, "tri.obj")
        with pytest.raises(ShapeMismatchError):
            load_blendshapes(build_panel().mesh, [tmp_path / "tri.obj"])
