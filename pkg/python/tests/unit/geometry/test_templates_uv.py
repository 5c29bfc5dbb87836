import numpy as np
import pytest

from garmentex.errors import InvocationError, MeshError, ParameterError
from garmentex.geometry import (
    TEMPLATES,
    boundary_vertices,
    build_quad,
    domain_from_corner_uvs,
    face_sides,
    facing_faces,
    load_template_dir,
    rasterize_uv_domain,
    resolve_template,
    save_template_dir,
    texel_centers_uv,
    uv_to_texel,
)
from garmentex.geometry.mesh import MAX_TEMPLATE_VERTICES
from garmentex.geometry.templates import build_pillow
from garmentex.render import Camera, render_mask


class TestTemplates:
    @pytest.mark.parametrize("name", sorted(TEMPLATES))
    def test_builtin_templates_resolve(self, name):
        assets = resolve_template(name)
        assert 0 < assets.mesh.num_vertices < MAX_TEMPLATE_VERTICES
        assert assets.mesh.landmark_indices
        assert assets.blendshapes.base is assets.mesh

    def test_pillow_garments_are_closed_and_two_sided(self, tshirt_assets):
        mesh = tshirt_assets.mesh
        assert len(boundary_vertices(mesh)) == 0
        sides = face_sides(mesh)
        assert (sides == 1).sum() == (sides == -1).sum()

    def test_tshirt_shape_space(self, tshirt_assets):
        assert tshirt_assets.blendshapes.names == ["left_sleeve_bend", "right_sleeve_bend",
                                                   "sleeve_lift"]
        assert len(tshirt_assets.mesh.landmark_indices) == 11
        # sleeve shapes leave the torso centerline alone
        collar = tshirt_assets.mesh.landmark_indices["collar"]
        np.testing.assert_allclose(tshirt_assets.blendshapes.shapes[:, collar], 0.0, atol=1e-12)

    def test_front_and_back_charts_do_not_overlap(self, panel_assets):
        mesh = panel_assets.mesh
        sides = face_sides(mesh)
        v = mesh.corner_uvs[:, :, 1]
        assert v[sides == 1].min() >= 0.5
        assert v[sides == -1].max() <= 0.5

    def test_strip_size(self, strip_assets):
        assert strip_assets.mesh.num_vertices == 40

    @pytest.mark.parametrize("name", ["tshirt", "panel", "tshirt_hd"])
    def test_every_edge_has_two_faces(self, name):
        faces = resolve_template(name).mesh.faces
        edges = np.sort(np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]]), 1)
        _, counts = np.unique(edges, axis=0, return_counts=True)
        assert counts.max() == 2
        assert counts.min() == 2

    def test_corner_cells_split_away_from_the_outline(self, panel_assets):
        mesh = panel_assets.mesh
        outline = np.abs(mesh.vertices[:, 2]) < 1e-12
        front = mesh.faces[face_sides(mesh) == 1]
        # no front triangle has all three corners on the shared outline
        assert not outline[front].all(axis=1).any()

    def test_outline_too_thin_for_cells(self):
        def ribbon(x, y):
            return (x > 0.0) & (x < 0.1) & (y > 0.0) & (y < 0.5)

        with pytest.raises(MeshError, match="too thin"):
            build_pillow(ribbon, (0.0, 0.1), (0.0, 0.5), 0.1, 0.02, {}, "ribbon")

    def test_production_density_tshirt(self):
        mesh = resolve_template("tshirt_hd").mesh
        assert 8_000 <= mesh.num_vertices < MAX_TEMPLATE_VERTICES
        assert mesh.num_faces == 16_000
        assert len(mesh.landmark_indices) == 11

    @pytest.mark.parametrize("view", ["front", "back"])
    def test_facing_chart_keeps_the_silhouette(self, tshirt_assets, view):
        mesh = tshirt_assets.mesh
        camera = Camera(view, 1.25, 64)
        facing = facing_faces(mesh, view)
        assert len(facing) == mesh.num_faces // 2
        np.testing.assert_array_equal(render_mask(mesh.vertices, facing, camera),
                                      render_mask(mesh.vertices, mesh.faces, camera))

    def test_single_sided_mesh_faces_every_view(self, quad_assets):
        np.testing.assert_array_equal(facing_faces(quad_assets.mesh, "back"),
                                      quad_assets.mesh.faces)

    def test_unknown_template(self):
        with pytest.raises(InvocationError, match="unknown template"):
            resolve_template("ballgown")

    def test_template_directory(self, tmp_path, tshirt_assets):
        save_template_dir(tshirt_assets, tmp_path / "tee")
        again = resolve_template(tmp_path / "tee")
        assert again.name == "tee"
        np.testing.assert_array_equal(again.mesh.vertices, tshirt_assets.mesh.vertices)
        assert again.mesh.landmark_indices == tshirt_assets.mesh.landmark_indices
        assert sorted(again.blendshapes.names) == sorted(tshirt_assets.blendshapes.names)
        assert load_template_dir(tmp_path / "tee").blendshapes.count == 3


class TestUvDomain:
    def test_texel_convention(self):
        centers = texel_centers_uv(4)
        assert centers[0, 0].tolist() == [0.125, 0.875]
        np.testing.assert_allclose(uv_to_texel(centers, 4)[2, 3], [3.0, 2.0])

    def test_identity_quad_fills_the_map(self):
        domain = rasterize_uv_domain(build_quad().mesh, 32)
        assert domain.count == 32 * 32
        assert domain.fraction == 1.0
        assert set(np.unique(domain.face_index)) == {0, 1}

    def test_triangle_covers_half(self):
        tri = np.array([[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]])
        domain = domain_from_corner_uvs(tri, 64)
        # centers with u + v <= 1 lie inside; 64 * 65 / 2 of them
        assert domain.count == 64 * 65 // 2
        assert domain.inside[-1, 0] and not domain.inside[0, -1]

    def test_resolution_floor(self):
        with pytest.raises(ParameterError):
            rasterize_uv_domain(build_quad().mesh, 8)

    def test_tshirt_domain_inside_charts(self, tshirt_assets):
        domain = rasterize_uv_domain(tshirt_assets.mesh, 64)
        assert 0.2 < domain.fraction < 1.0
        assert np.all(domain.face_index[~domain.inside] == -1)
