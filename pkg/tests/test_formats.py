import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from troplanar.corpus import BUNDLED_CORPUS, FIXTURES
from troplanar.errors import ParseError
from troplanar.formats import (
    file_kind,
    parse_graph,
    parse_heights,
    parse_polygon,
    parse_triangulation,
    read_polygon,
    read_triangulation,
    serialize_graph,
    serialize_heights,
    serialize_polygon,
    serialize_triangulation,
)
from troplanar.graphs import Circle
from troplanar.lattice import LatticePoint


class TestPolygonFormat(unittest.TestCase):
    def test_clockwise_input_is_reoriented(self):
        polygon = parse_polygon("polygon\nv 0 0\nv 0 1\nv 1 0\n")
        self.assertEqual(polygon.doubled_area, 1)

    def test_comments_and_blank_lines(self):
        polygon = parse_polygon("# unit square\n\npolygon  # header\nv 0 0\nv 1 0\nv 1 1\nv 0 1\n")
        self.assertEqual(len(polygon.vertices), 4)
        self.assertEqual(parse_polygon(serialize_polygon(polygon)), polygon)

    def test_errors_carry_positions(self):
        cases = {
            "triangle\nv 0 0\n": (1, 1),
            "polygon\nv 0 x\n": (2, 5),
            "polygon\nv 0 0 0\n": (2, 1),
            "polygon\nw 0 0\n": (2, 1),
        }
        for text, (line, column) in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ParseError) as ctx:
                    parse_polygon(text, "in.poly")
                self.assertEqual((ctx.exception.line, ctx.exception.column), (line, column))
                self.assertTrue(str(ctx.exception).startswith(f"in.poly:{line}:{column}:"))

    def test_too_few_vertices(self):
        with self.assertRaises(ParseError):
            parse_polygon("polygon\nv 0 0\nv 1 0\n")
        with self.assertRaises(ParseError):
            parse_polygon("")


class TestTriangulationFormat(unittest.TestCase):
    def test_hull_is_used_without_vertices(self):
        tri = parse_triangulation("triangulation\nt 0 0 1 0 1 1\nt 0 0 1 1 0 1\n")
        self.assertEqual(len(tri.polygon.vertices), 4)

    def test_round_trip(self):
        tri = read_triangulation(FIXTURES / "fig1.tri")
        self.assertEqual(parse_triangulation(serialize_triangulation(tri)).key, tri.key)

    def test_no_triangles(self):
        with self.assertRaises(ParseError):
            parse_triangulation("triangulation\nv 0 0\nv 1 0\nv 0 1\n")

    def test_short_triangle_line(self):
        with self.assertRaises(ParseError) as ctx:
            parse_triangulation("triangulation\nt 0 0 1 0 1\n")
        self.assertEqual(ctx.exception.line, 2)


class TestGraphFormat(unittest.TestCase):
    def test_circle(self):
        self.assertIsInstance(parse_graph("graph\ncircle\n"), Circle)
        self.assertEqual(serialize_graph(Circle()), "graph\ncircle\n")

    def test_round_trip(self):
        g = parse_graph("graph\nn 2\ne 0 0\ne 0 1\ne 1 1\n")
        self.assertEqual(parse_graph(serialize_graph(g)), g)

    def test_errors(self):
        for text in (
            "graph\ne 0 1\n",
            "graph\nn 2\nn 2\n",
            "graph\nn 2\ne 0 2\ne 0 0\ne 1 1\n",
            "graph\nn 2\ne 0 1\ne 0 1\n",
            "graph\n",
        ):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_graph(text)

    def test_out_of_range_column(self):
        with self.assertRaises(ParseError) as ctx:
            parse_graph("graph\nn 2\ne 5 0\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 3))


class TestHeightsFormat(unittest.TestCase):
    def test_parse(self):
        heights = parse_heights("# heights\n0 0 0\n1 0 3/4\n-1 2 -5\n")
        self.assertEqual(heights[LatticePoint(1, 0)], Fraction(3, 4))
        self.assertEqual(heights[LatticePoint(-1, 2)], Fraction(-5))
        self.assertEqual(parse_heights(serialize_heights(heights)), heights)

    def test_bad_rational(self):
        with self.assertRaises(ParseError) as ctx:
            parse_heights("0 0 1/0\n")
        self.assertEqual(ctx.exception.column, 5)


class TestFiles(unittest.TestCase):
    def test_file_kind(self):
        self.assertEqual(file_kind(FIXTURES / "fig10.poly"), "polygon")
        self.assertEqual(file_kind(FIXTURES / "fig10.tri"), "triangulation")
        self.assertEqual(file_kind(FIXTURES / "fig10_skeleton.graph"), "graph")
        with tempfile.TemporaryDirectory() as tmp:
            empty = Path(tmp) / "empty.txt"
            empty.write_text("# nothing\n")
            self.assertIsNone(file_kind(empty))

    def test_read_polygon_from_triangulation(self):
        self.assertEqual(read_polygon(BUNDLED_CORPUS / "theta.tri").genus, 2)
        self.assertEqual(read_polygon(FIXTURES / "fig10.poly"), read_triangulation(FIXTURES / "fig10.tri").polygon)


if __name__ == "__main__":
    unittest.main()
