"""Geometric predicates: spec examples, invariance properties, batch twins."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomprob import geom
from geomprob.geom import (
    ConvexBody2,
    DegenerateGeometryError,
    GeometryError,
    LineCoords2,
    chord_length,
    convex_position_4,
    convex_position_5_3d,
    flat_from_points,
    line_from_points,
    point_in_tetra,
    point_in_triangle,
    segment_area,
    tetra_volume,
    triangle_area,
)

coord = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)


class TestSimplexMeasures:
    def test_triangle_examples(self):
        assert triangle_area((0, 0), (1, 0), (0, 1)) == 0.5
        assert triangle_area((0, 0), (1, 1), (2, 2)) == 0.0
        assert triangle_area((0, 0), (2, 0), (0, 3)) == 3.0

    def test_tetra_examples(self):
        corner = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert tetra_volume(*corner) == pytest.approx(1 / 6, rel=1e-15)
        assert tetra_volume((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)) == 0.0
        scaled = [tuple(2 * c for c in p) for p in corner]
        assert tetra_volume(*scaled) == pytest.approx(8 / 6, rel=1e-15)

    @given(st.lists(coord, min_size=6, max_size=6), st.floats(0.0, 2 * math.pi), coord, coord)
    @settings(max_examples=60)
    def test_triangle_rigid_invariance(self, flat, angle, tx, ty):
        pts = np.array(flat).reshape(3, 2)
        base = triangle_area(*pts)
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        moved = pts @ rot.T + np.array([tx, ty])
        assert triangle_area(*moved) == pytest.approx(base, rel=1e-10, abs=1e-12)

    @given(st.lists(coord, min_size=6, max_size=6), st.floats(0.1, 3.0))
    @settings(max_examples=60)
    def test_triangle_scaling(self, flat, scale):
        pts = np.array(flat).reshape(3, 2)
        assert triangle_area(*(scale * pts)) == pytest.approx(
            scale * scale * triangle_area(*pts), rel=1e-10, abs=1e-12
        )

    @given(st.lists(coord, min_size=12, max_size=12), st.floats(0.1, 3.0))
    @settings(max_examples=60)
    def test_tetra_scaling(self, flat, scale):
        pts = np.array(flat).reshape(4, 3)
        assert tetra_volume(*(scale * pts)) == pytest.approx(
            scale**3 * tetra_volume(*pts), rel=1e-10, abs=1e-12
        )


class TestPointClassification:
    def test_triangle_examples(self):
        tri = [(0, 0), (1, 0), (0, 1)]
        assert point_in_triangle((1 / 3, 1 / 3), *tri) == "inside"
        assert point_in_triangle((5, 5), *tri) == "outside"
        assert point_in_triangle((0.5, 0), *tri) == "boundary"

    def test_orientation_independent(self):
        cw = [(0, 0), (0, 1), (1, 0)]
        assert point_in_triangle((0.2, 0.2), *cw) == "inside"

    def test_degenerate_triangle_raises(self):
        with pytest.raises(DegenerateGeometryError):
            point_in_triangle((0, 0), (0, 0), (1, 1), (2, 2))

    def test_tetra_examples(self):
        tet = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert point_in_tetra((0.25, 0.25, 0.25), *tet) == "inside"
        assert point_in_tetra((2, 2, 2), *tet) == "outside"
        face_centroid = (1 / 3, 1 / 3, 1 / 3)
        assert point_in_tetra(face_centroid, *tet) == "boundary"

    def test_degenerate_tetra_raises(self):
        with pytest.raises(DegenerateGeometryError):
            point_in_tetra((0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))


class TestConvexPosition:
    def test_examples(self):
        assert convex_position_4([(0, 0), (1, 0), (1, 1), (0, 1)]) is True
        assert convex_position_4([(0, 0), (1, 0), (0, 1), (1 / 3, 1 / 3)]) is False
        assert convex_position_4([(0, 0), (1, 0), (2, 0), (0, 1)]) is False

    def test_3d_examples(self):
        bipyramid = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -0.5, 0.8), (0, -0.5, -0.8)]
        assert convex_position_5_3d(bipyramid) is True
        with_centroid = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0.25, 0.25, 0.25)]
        assert convex_position_5_3d(with_centroid) is False
        coplanar = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
        assert convex_position_5_3d(coplanar) is False

    def test_wrong_arity(self):
        with pytest.raises(GeometryError):
            convex_position_4([(0, 0), (1, 0), (0, 1)])
        with pytest.raises(GeometryError):
            convex_position_5_3d([(0, 0, 0)] * 4)

    @given(st.lists(coord, min_size=8, max_size=8), st.lists(coord, min_size=6, max_size=6))
    @settings(max_examples=60)
    def test_affine_invariance(self, flat, affine):
        pts = np.array(flat).reshape(4, 2)
        matrix = np.array(affine[:4]).reshape(2, 2)
        if abs(np.linalg.det(matrix)) < 0.1:
            return
        shift = np.array(affine[4:])
        before = convex_position_4(list(pts))
        after = convex_position_4(list(pts @ matrix.T + shift))
        assert before == after

    def test_mutual_exclusivity_sampled(self):
        rng = np.random.default_rng(321)
        pts = rng.uniform(-1, 1, size=(20_000, 4, 2))
        counts = geom.inside_event_counts_4(pts)
        assert int((counts >= 2).sum()) == 0


class TestLineFromPoints:
    def test_horizontal_line(self):
        line = line_from_points((0, 1), (1, 1))
        assert line.p == pytest.approx(1.0, abs=1e-15)
        assert line.theta == pytest.approx(math.pi / 2, abs=1e-15)

    def test_diagonal_line(self):
        line = line_from_points((1, 0), (0, 1))
        assert line.p == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
        assert line.theta == pytest.approx(math.pi / 4, rel=1e-12)

    def test_line_through_origin_tie_break(self):
        line = line_from_points((0, 0), (1, 0))
        assert line.p == 0.0
        assert line.theta == pytest.approx(math.pi / 2, abs=1e-15)

    def test_coincident_points(self):
        with pytest.raises(DegenerateGeometryError):
            line_from_points((0.5, 0.5), (0.5, 0.5))

    @given(st.lists(coord, min_size=4, max_size=4))
    @settings(max_examples=80)
    def test_round_trip(self, flat):
        p1, p2 = (flat[0], flat[1]), (flat[2], flat[3])
        if math.hypot(p2[0] - p1[0], p2[1] - p1[1]) < 1e-6:
            return
        line = line_from_points(p1, p2)
        assert line.p >= 0.0
        assert 0.0 <= line.theta < 2 * math.pi
        assert abs(line.signed_distance(p1)) <= 1e-9
        assert abs(line.signed_distance(p2)) <= 1e-9


class TestFlatFromPoints:
    def test_plane_example(self):
        flat = flat_from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert flat.p == pytest.approx(1 / math.sqrt(3), rel=1e-14)

    def test_coordinate_plane(self):
        flat = flat_from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
        assert flat.p == 0.0
        assert flat.phi == pytest.approx(0.0, abs=1e-12)

    def test_coordinate_hyperplane(self):
        pts = [(0, 0, 0, 0.5), (1, 0, 0, 0.5), (0, 1, 0, 0.5), (0, 0, 1, 0.5)]
        flat = flat_from_points(pts)
        assert flat.p == pytest.approx(0.5, rel=1e-14)
        assert flat.psi == pytest.approx(0.0, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateGeometryError):
            flat_from_points([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
        with pytest.raises(GeometryError):
            flat_from_points([(0, 0)])

    @given(st.lists(coord, min_size=9, max_size=9))
    @settings(max_examples=60)
    def test_plane_round_trip(self, flat):
        pts = np.array(flat).reshape(3, 3)
        try:
            plane = flat_from_points(pts)
        except GeometryError:
            return
        for p in pts:
            assert abs(plane.signed_distance(p)) <= 1e-9

    @given(st.lists(coord, min_size=16, max_size=16))
    @settings(max_examples=60)
    def test_hyperplane_round_trip(self, flat):
        pts = np.array(flat).reshape(4, 4)
        try:
            hyper = flat_from_points(pts)
        except GeometryError:
            return
        for p in pts:
            assert abs(hyper.signed_distance(p)) <= 1e-9


class TestSegmentArea:
    def test_examples(self):
        assert segment_area(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
        assert segment_area(1.0) == pytest.approx(0.0, abs=1e-15)
        assert segment_area(0.5) == pytest.approx(math.pi / 3 - math.sqrt(3) / 4, rel=1e-14)

    def test_against_quadrature_oracle(self):
        from geomprob.quadrature import adaptive_simpson

        for h in (0.1, 0.35, 0.5, 0.8, 0.99):
            oracle, _ = adaptive_simpson(
                lambda x: 2.0 * math.sqrt(max(0.0, 1 - x * x)), h, 1.0
            )
            assert segment_area(h) == pytest.approx(oracle, abs=1e-10)

    def test_decreasing(self):
        hs = np.linspace(0, 1, 50)
        values = [segment_area(h) for h in hs]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            segment_area(-0.1)
        with pytest.raises(ValueError):
            segment_area(1.1)


class TestConvexBody:
    def test_disk_properties(self):
        disk = ConvexBody2.unit_disk()
        assert disk.area == pytest.approx(math.pi)
        assert disk.perimeter == pytest.approx(2 * math.pi)
        assert disk.contains((0.5, 0.5))
        assert not disk.contains((1.0, 0.5))

    def test_square_properties(self):
        square = ConvexBody2.unit_square()
        assert square.area == pytest.approx(1.0)
        assert square.perimeter == pytest.approx(4.0)
        assert square.contains((0.0, 0.0))
        assert not square.contains((0.8, 0.0))

    def test_polygon_validation(self):
        with pytest.raises(GeometryError):
            ConvexBody2.polygon([(0, 0), (1, 0)])
        with pytest.raises(GeometryError):  # clockwise
            ConvexBody2.polygon([(0, 0), (0, 1), (1, 0)])
        with pytest.raises(GeometryError):  # not strictly convex
            ConvexBody2.polygon([(0, 0), (1, 0), (2, 0), (1, 1)])

    def test_chord_examples(self):
        disk = ConvexBody2.unit_disk()
        assert chord_length(disk, LineCoords2(0.0, 0.3)) == pytest.approx(2.0)
        assert chord_length(disk, LineCoords2(1.0, 0.3)) == 0.0
        square = ConvexBody2.unit_square()
        assert chord_length(square, LineCoords2(0.0, 0.0)) == pytest.approx(1.0)
        assert chord_length(square, LineCoords2(0.0, math.pi / 2)) == pytest.approx(1.0)
        assert chord_length(square, LineCoords2(2.0, 0.0)) == 0.0

    def test_disk_chord_matches_fine_polygon(self):
        disk = ConvexBody2.unit_disk()
        ngon = ConvexBody2.regular_polygon(4096)
        rng = np.random.default_rng(99)
        worst = 0.0
        for _ in range(1000):
            line = LineCoords2(rng.uniform(0, 1.2), rng.uniform(0, 2 * math.pi))
            worst = max(worst, abs(chord_length(disk, line) - chord_length(ngon, line)))
        assert worst <= 1e-5

    def test_random_convex_polygon_generator(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            body = geom.random_convex_polygon(rng, int(rng.integers(4, 13)))
            assert body.area > 0


class TestBatchTwins:
    def test_convex_position_4_matches_scalar(self):
        rng = np.random.default_rng(77)
        pts = rng.uniform(-1, 1, size=(3000, 4, 2))
        batch = geom.convex_position_4_many(pts)
        scalar = np.array([convex_position_4(list(q)) for q in pts])
        assert (batch == scalar).all()

    def test_convex_position_5_matches_scalar(self):
        rng = np.random.default_rng(78)
        pts = rng.uniform(-1, 1, size=(1500, 5, 3))
        batch = geom.convex_position_5_many(pts)
        scalar = np.array([convex_position_5_3d(list(q)) for q in pts])
        assert (batch == scalar).all()

    def test_simplex_measures_match_scalar(self):
        rng = np.random.default_rng(79)
        tri = rng.uniform(-1, 1, size=(500, 3, 2))
        batch = geom.triangle_area_many(tri[:, 0], tri[:, 1], tri[:, 2])
        scalar = [triangle_area(*t) for t in tri]
        assert np.allclose(batch, scalar, rtol=1e-14, atol=0)
        tet = rng.uniform(-1, 1, size=(500, 4, 3))
        batch = geom.tetra_volume_many(tet[:, 0], tet[:, 1], tet[:, 2], tet[:, 3])
        scalar = [tetra_volume(*t) for t in tet]
        assert np.allclose(batch, scalar, rtol=1e-14, atol=0)

    def test_flat_offset_matches_scalar(self):
        rng = np.random.default_rng(80)
        for k, builder in ((2, line_from_points), (3, flat_from_points), (4, flat_from_points)):
            pts = rng.uniform(-1, 1, size=(400, k, k))
            offsets, bad = geom.flat_offset_many(pts)
            assert not bad.any()
            for i in range(0, 400, 17):
                tup = pts[i]
                flat = builder(tup[0], tup[1]) if k == 2 else builder(list(tup))
                assert offsets[i] == pytest.approx(flat.p, rel=1e-9, abs=1e-12)
