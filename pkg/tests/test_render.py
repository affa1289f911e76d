import shutil
import tempfile
import unittest
from pathlib import Path

from troplanar.corpus import BUNDLED_CORPUS
from troplanar.enumeration import seed_triangulation
from troplanar.formats import read_triangulation
from troplanar.graphs import Circle, Skeleton
from troplanar.lattice import LatticePoint, LatticePolygon
from troplanar.render import render_graph, render_triangulation


class TestRender(unittest.TestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.tmp)

    def test_triangulation_with_dual(self):
        tri = read_triangulation(BUNDLED_CORPUS / "dumbbell.tri")
        out = render_triangulation(tri, self.tmp / "dumbbell.png", title="dumbbell")
        self.assertGreater(out.stat().st_size, 0)

    def test_genus_zero_triangulation(self):
        square = LatticePolygon((LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(1, 1), LatticePoint(0, 1)))
        out = render_triangulation(seed_triangulation(square), self.tmp / "square.svg")
        self.assertIn("<svg", out.read_text())

    def test_graphs_with_loops_and_parallel_edges(self):
        for name, graph in [
            ("circle", Circle()),
            ("theta", Skeleton(2, ((0, 1), (0, 1), (0, 1)))),
            ("dumbbell", Skeleton(2, ((0, 0), (0, 1), (1, 1)))),
        ]:
            with self.subTest(graph=name):
                out = render_graph(graph, self.tmp / f"{name}.png", seed=1)
                self.assertGreater(out.stat().st_size, 0)


if __name__ == "__main__":
    unittest.main()
