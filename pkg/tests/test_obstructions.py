import unittest

from troplanar.classifier import obstructed_anchor
from troplanar.corpus import FIXTURES
from troplanar.embedding import planar_embeddings
from troplanar.errors import NotDoubleHeavyMatch, NotTwoLoopsMatch
from troplanar.formats import read_graph
from troplanar.generation import THETA
from troplanar.graphs import from_edges, is_planar
from troplanar.obstructions import (
    Obstruction,
    ObstructionKind,
    detect_double_heavy,
    detect_heavy_cycle,
    detect_sprawling_node,
    detect_sprawling_triangle,
    double_heavy_two_loops_obstructed,
    far_side_has_cut_edge,
    generate_corollary_graphs,
    heavy_one_loop_obstructed,
    heavy_two_loops_obstructed,
    is_crowded,
    three_faces_meet,
)

TRIPOD = from_edges([(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])
LOOPED_TRIANGLE = from_edges([(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 3), (4, 4), (5, 5)])
K4 = from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
CUBE = from_edges(
    [(i, (i + 1) % 4) for i in range(4)] + [(i + 4, (i + 1) % 4 + 4) for i in range(4)] + [(i, i + 4) for i in range(4)]
)


def fixture(name):
    return read_graph(FIXTURES / name)


class TestSprawling(unittest.TestCase):
    def test_sprawling_node(self):
        found = detect_sprawling_node(TRIPOD)
        self.assertIsNotNone(found)
        self.assertEqual(found.kind, ObstructionKind.SPRAWLING_NODE)
        self.assertEqual(found.witness["vertex"], 0)
        self.assertIsNone(detect_sprawling_node(K4))
        self.assertIsNone(detect_sprawling_node(fixture("fig1_skeleton.graph")))

    def test_sprawling_triangle(self):
        found = detect_sprawling_triangle(LOOPED_TRIANGLE)
        self.assertIsNotNone(found)
        self.assertEqual(sorted(found.witness["triangle"]), [0, 1, 2])
        self.assertIsNone(detect_sprawling_node(LOOPED_TRIANGLE))
        self.assertIsNone(detect_sprawling_triangle(K4))
        self.assertIsNone(detect_sprawling_triangle(fixture("fig2_f.graph")))

    def test_describe(self):
        self.assertEqual(Obstruction(ObstructionKind.CROWDED).describe(), "Crowded")
        self.assertEqual(Obstruction(ObstructionKind.SPRAWLING_NODE, {"vertex": 3}).describe(), "SprawlingNode(vertex=3)")


class TestCrowded(unittest.TestCase):
    def test_three_connected_graphs_are_not_crowded(self):
        self.assertFalse(is_crowded(K4))
        self.assertFalse(is_crowded(CUBE))
        self.assertFalse(is_crowded(THETA))


class TestHeavyCycles(unittest.TestCase):
    def test_one_loop_rejections(self):
        for name in ("fig2_a.graph", "fig2_b.graph", "fig2_c.graph", "fig2_d.graph"):
            with self.subTest(graph=name):
                g = fixture(name)
                one = [m for m in detect_heavy_cycle(g) if m.kind == "one-loop"]
                self.assertTrue(one)
                found = obstructed_anchor(one, lambda m: heavy_one_loop_obstructed(g, m))
                self.assertEqual(found.kind, ObstructionKind.HEAVY_ONE_LOOP)

    def test_genus_two_far_side_with_cut_edge(self):
        g = fixture("fig2_c.graph")
        hits = [m for m in detect_heavy_cycle(g) if m.kind == "one-loop" and m.g2_genus == 2]
        self.assertTrue(any(far_side_has_cut_edge(g, m.g2, m.e2) for m in hits))

    def test_realizable_one_loop_match(self):
        g = fixture("fig10_skeleton.graph")
        hits = [
            m for m in detect_heavy_cycle(g)
            if m.kind == "one-loop" and m.g2_genus == 2 and not far_side_has_cut_edge(g, m.g2, m.e2)
        ]
        self.assertTrue(hits)
        self.assertTrue(any(heavy_one_loop_obstructed(g, m) is None for m in hits))

    def test_match_kind_is_checked(self):
        g = fixture("fig2_a.graph")
        match = next(m for m in detect_heavy_cycle(g) if m.kind == "one-loop")
        self.assertEqual(match.g1_genus, 1)
        self.assertIn(match.anchor_edge, match.cycle_edges)
        with self.assertRaises(NotTwoLoopsMatch):
            heavy_two_loops_obstructed(g, match)
        with self.assertRaises(NotDoubleHeavyMatch):
            double_heavy_two_loops_obstructed(g, match)

    def test_summary(self):
        g = fixture("fig2_a.graph")
        match = detect_heavy_cycle(g)[0]
        summary = match.summary()
        self.assertEqual(summary["bridges"], [match.e1, match.e2])
        self.assertNotIn("cycle2", summary)


class TestDoubleHeavy(unittest.TestCase):
    def test_realized_skeleton(self):
        g = fixture("fig1_skeleton.graph")
        matches = detect_double_heavy(g)
        self.assertTrue(matches)
        for m in matches:
            self.assertEqual(m.kind, "double-heavy")
            self.assertEqual(len(m.anchor), 3)
            self.assertEqual(len(m.cycle_edges & m.cycle2_edges), 1)
        self.assertTrue(any(double_heavy_two_loops_obstructed(g, m) is None for m in matches))

    def test_rejected_skeletons(self):
        for name in ("fig2_e.graph", "fig2_f.graph", "fig2_h.graph"):
            with self.subTest(graph=name):
                g = fixture(name)
                matches = detect_double_heavy(g)
                self.assertTrue(matches)
                found = obstructed_anchor(matches, lambda m: double_heavy_two_loops_obstructed(g, m))
                self.assertIsNotNone(found)
                self.assertEqual(found.kind, ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS)
                self.assertTrue(found.witness["failed"])

    def test_three_faces_meet(self):
        emb = next(planar_embeddings(K4))
        self.assertTrue(three_faces_meet(emb, 0))
        self.assertFalse(three_faces_meet(next(planar_embeddings(THETA)), 0))


class TestCorollaryGraphs(unittest.TestCase):
    def test_generator(self):
        graphs = generate_corollary_graphs(count=5, seed=3)
        self.assertEqual(len(graphs), 5)
        self.assertEqual(len({g.certificate for g in graphs}), 5)
        for g in graphs:
            self.assertTrue(8 <= g.genus <= 10)
            self.assertTrue(is_planar(g))
            self.assertTrue(any(m.kind == "one-loop" for m in detect_heavy_cycle(g)))

    def test_seeded(self):
        first = [g.certificate for g in generate_corollary_graphs(count=3, seed=7)]
        again = [g.certificate for g in generate_corollary_graphs(count=3, seed=7)]
        self.assertEqual(first, again)


if __name__ == "__main__":
    unittest.main()
