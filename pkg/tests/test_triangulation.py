import unittest

from troplanar.errors import NotASplitEdge, NotATiling, NotFaceToFace, NotUnimodular
from troplanar.formats import read_triangulation
from troplanar.corpus import BUNDLED_CORPUS, FIXTURES
from troplanar.lattice import LatticePoint, LatticePolygon
from troplanar.triangulation import (
    Triangle,
    dual_graph,
    decompose_along,
    flip,
    flippable,
    from_triangles,
    nontrivial_split_edges,
    parse_serialization,
    segment,
    split_edge_at,
    split_edges,
    validate,
)

UNIT_SQUARE = LatticePolygon((LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(1, 1), LatticePoint(0, 1)))


def square_split(diagonal_up: bool):
    if diagonal_up:
        return [Triangle.of((0, 0), (1, 0), (1, 1)), Triangle.of((0, 0), (1, 1), (0, 1))]
    return [Triangle.of((0, 0), (1, 0), (0, 1)), Triangle.of((1, 0), (1, 1), (0, 1))]


class TestValidate(unittest.TestCase):
    def test_unit_square(self):
        tri = validate(UNIT_SQUARE, square_split(True))
        self.assertEqual(len(tri), 2)
        self.assertEqual(tri.interior_segments, [segment((0, 0), (1, 1))])
        self.assertEqual(len(tri.boundary_segments), 4)

    def test_gap_is_not_a_tiling(self):
        with self.assertRaises(NotATiling):
            validate(UNIT_SQUARE, square_split(True)[:1])

    def test_overlap_is_not_a_tiling(self):
        with self.assertRaises(NotATiling):
            validate(UNIT_SQUARE, square_split(True)[:1] + square_split(False)[:1])

    def test_big_triangle_is_not_unimodular(self):
        big = LatticePolygon((LatticePoint(0, 0), LatticePoint(2, 0), LatticePoint(0, 2)))
        with self.assertRaises(NotUnimodular):
            validate(big, [Triangle.of((0, 0), (2, 0), (0, 2))])

    def test_hanging_vertex(self):
        polygon = LatticePolygon((LatticePoint(0, 0), LatticePoint(2, 0), LatticePoint(2, 1), LatticePoint(0, 1)))
        triangles = [
            Triangle.of((0, 0), (2, 0), (0, 1)),
            Triangle.of((2, 0), (2, 1), (1, 1)),
            Triangle.of((0, 1), (1, 1), (2, 0)),
        ]
        with self.assertRaises((NotFaceToFace, NotUnimodular)):
            validate(polygon, triangles)

    def test_from_triangles_uses_hull(self):
        tri = from_triangles(square_split(False))
        self.assertEqual(tri.polygon.doubled_area, 2)


class TestStructure(unittest.TestCase):
    def setUp(self):
        self.dumbbell = read_triangulation(BUNDLED_CORPUS / "dumbbell.tri")
        self.fig1 = read_triangulation(FIXTURES / "fig1.tri")

    def test_dual_graph(self):
        graph = dual_graph(self.dumbbell)
        self.assertEqual(len(graph.nodes), 6)
        self.assertEqual(len(graph.arcs), len(self.dumbbell.interior_segments))
        self.assertEqual(len(graph.rays), len(self.dumbbell.boundary_segments))

    def test_split_edge(self):
        splits = nontrivial_split_edges(self.dumbbell)
        self.assertEqual(len(splits), 1)
        self.assertEqual(splits[0].segment, segment((1, 0), (0, 1)))
        self.assertEqual({splits[0].left_genus, splits[0].right_genus}, {1})

    def test_decompose_along(self):
        split = split_edge_at(self.dumbbell, (0, 1), (1, 0))
        left, right = decompose_along(self.dumbbell, split)
        self.assertEqual(len(left) + len(right), len(self.dumbbell))
        self.assertEqual({left.genus, right.genus}, {1})

    def test_split_edge_at_rejects_interior_segment(self):
        with self.assertRaises(NotASplitEdge):
            split_edge_at(self.dumbbell, (0, 0), (1, 0))

    def test_fig1(self):
        self.assertEqual(self.fig1.genus, 6)
        self.assertEqual(len(self.fig1.polygon.vertices), 5)
        self.assertEqual(len(self.fig1), self.fig1.polygon.doubled_area)
        self.assertTrue(all(1 <= self.fig1.triangle_degree(t) <= 3 for t in self.fig1.triangles))

    def test_every_split_edge_joins_boundary_points(self):
        for s in split_edges(self.fig1):
            self.assertTrue(all(self.fig1.polygon.on_boundary(p) for p in s.segment))


class TestFlip(unittest.TestCase):
    def test_flip_square_diagonal(self):
        tri = validate(UNIT_SQUARE, square_split(True))
        diagonal = segment((0, 0), (1, 1))
        self.assertTrue(flippable(tri, diagonal))
        flipped = flip(tri, diagonal)
        self.assertEqual(flipped.triangles, frozenset(square_split(False)))
        self.assertEqual(flip(flipped, segment((1, 0), (0, 1))).triangles, tri.triangles)

    def test_boundary_segment_is_not_flippable(self):
        tri = validate(UNIT_SQUARE, square_split(True))
        self.assertFalse(flippable(tri, segment((0, 0), (1, 0))))

    def test_serialization_round_trip(self):
        tri = read_triangulation(FIXTURES / "fig10.tri")
        again = validate(tri.polygon, parse_serialization(tri.serialize()))
        self.assertEqual(again.key, tri.key)


if __name__ == "__main__":
    unittest.main()
