import json
import unittest

from troplanar.corpus import BUNDLED_CORPUS, FIXTURES
from troplanar.enumeration import seed_triangulation
from troplanar.errors import GenusZero
from troplanar.formats import read_graph, read_triangulation
from troplanar.generation import DUMBBELL, THETA
from troplanar.graphs import Circle
from troplanar.lattice import LatticePoint, LatticePolygon
from troplanar.skeleton import retract_graph, skeletonize, to_dot, to_json
from troplanar.triangulation import segment


class TestSkeletonize(unittest.TestCase):
    def test_genus_one_is_a_circle(self):
        ps = skeletonize(read_triangulation(BUNDLED_CORPUS / "circle.tri"))
        self.assertIsInstance(ps.skeleton, Circle)
        self.assertEqual(ps.genus, 1)
        self.assertEqual(len(ps.cycle_map), 1)

    def test_genus_two(self):
        theta = skeletonize(read_triangulation(BUNDLED_CORPUS / "theta.tri"))
        dumbbell = skeletonize(read_triangulation(BUNDLED_CORPUS / "dumbbell.tri"))
        self.assertEqual(theta.skeleton.certificate, THETA.certificate)
        self.assertEqual(dumbbell.skeleton.certificate, DUMBBELL.certificate)
        self.assertEqual(theta.bridge_map, {})

    def test_bridge_crosses_the_split_edge(self):
        ps = skeletonize(read_triangulation(BUNDLED_CORPUS / "dumbbell.tri"))
        self.assertEqual(len(ps.bridge_map), 1)
        (splits,) = ps.bridge_map.values()
        self.assertEqual([s.segment for s in splits], [segment((1, 0), (0, 1))])

    def test_genus_zero(self):
        square = LatticePolygon((LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(1, 1), LatticePoint(0, 1)))
        with self.assertRaises(GenusZero):
            skeletonize(seed_triangulation(square))

    def test_fixture(self):
        ps = skeletonize(read_triangulation(FIXTURES / "fig1.tri"))
        expected = read_graph(FIXTURES / "fig1_skeleton.graph")
        self.assertEqual(ps.skeleton.certificate, expected.certificate)
        self.assertEqual(ps.skeleton.n, 10)
        self.assertEqual(len(ps.skeleton.edges), 15)
        self.assertEqual(len(ps.vertex_triangles), 10)
        self.assertEqual(len(ps.cycle_map), 6)
        self.assertTrue(all(ps.cycle_map.values()))

    def test_provenance_lookups(self):
        ps = skeletonize(read_triangulation(FIXTURES / "fig1.tri"))
        for k, chain in enumerate(ps.edge_segments):
            self.assertEqual(ps.edge_of_segment(chain[0]), k)
        for v, t in enumerate(ps.vertex_triangles):
            self.assertEqual(ps.vertex_of_triangle(t), v)

    def test_second_fixture(self):
        ps = skeletonize(read_triangulation(FIXTURES / "fig10.tri"))
        self.assertEqual(ps.skeleton.certificate, read_graph(FIXTURES / "fig10_skeleton.graph").certificate)


class TestOutput(unittest.TestCase):
    def test_dot(self):
        ps = skeletonize(read_triangulation(FIXTURES / "fig1.tri"))
        dot = to_dot(ps)
        self.assertTrue(dot.startswith("graph skeleton {"))
        self.assertEqual(dot.count(" -- "), 15)
        self.assertIn("c -- c;", to_dot(Circle()))

    def test_json(self):
        ps = skeletonize(read_triangulation(BUNDLED_CORPUS / "dumbbell.tri"))
        payload = json.loads(to_json(ps))
        self.assertEqual(payload["genus"], 2)
        self.assertEqual(payload["certificate"], DUMBBELL.certificate)
        self.assertEqual(sorted(payload["loops"].values()), [1, 1])
        self.assertEqual(len(payload["bridge_map"]), 1)

    def test_retract_graph_is_identity_on_trivalent(self):
        self.assertEqual(retract_graph(THETA).certificate, THETA.certificate)
        self.assertIsInstance(retract_graph(Circle()), Circle)


if __name__ == "__main__":
    unittest.main()
