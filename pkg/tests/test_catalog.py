import unittest

from troplanar.catalog import DEFAULT_CATALOG, REQUIRED, Catalog, detect_catalog, load_catalog, parse_catalog
from troplanar.corpus import FIXTURES
from troplanar.errors import CatalogMissing, ParseError
from troplanar.formats import read_graph
from troplanar.obstructions import ObstructionKind

MINIMAL = """
entry crowded
kind Crowded
source: built in
predicate crowded
end
"""


class TestLoadCatalog(unittest.TestCase):
    def setUp(self):
        self.catalog = load_catalog()

    def test_bundled_entries(self):
        self.assertEqual(self.catalog.names(), list(REQUIRED))
        enve = self.catalog.get("enve-loop")
        self.assertEqual(enve.kind, ObstructionKind.ENVE_LOOP_CATALOG)
        self.assertEqual(enve.status, "graph")
        self.assertEqual(enve.genus, 6)
        self.assertTrue(enve.sources)
        self.assertEqual(self.catalog.get("crowded").predicate, "crowded")

    def test_pending_entries(self):
        self.assertEqual([e.name for e in self.catalog.pending(5)], ["tie-fighter"])
        self.assertEqual(self.catalog.pending(6), [])

    def test_unknown_entry(self):
        with self.assertRaises(CatalogMissing):
            self.catalog.get("bowtie")

    def test_default_path(self):
        self.assertEqual(load_catalog(DEFAULT_CATALOG), self.catalog)


class TestDetectCatalog(unittest.TestCase):
    def setUp(self):
        self.catalog = load_catalog()

    def test_enve_loop_graph(self):
        g = read_graph(FIXTURES / "fig2_g.graph")
        found = detect_catalog(g, self.catalog)
        self.assertIsNotNone(found)
        self.assertEqual(found.kind, ObstructionKind.ENVE_LOOP_CATALOG)
        self.assertEqual(found.witness["entry"], "enve-loop")

    def test_matching_is_up_to_isomorphism(self):
        g = read_graph(FIXTURES / "fig2_g.graph")
        shuffled = g.relabel([3, 1, 4, 0, 5, 9, 2, 6, 8, 7])
        self.assertEqual(detect_catalog(shuffled, self.catalog).kind, ObstructionKind.ENVE_LOOP_CATALOG)

    def test_realized_skeleton_matches_nothing(self):
        g = read_graph(FIXTURES / "fig1_skeleton.graph")
        self.assertIsNone(detect_catalog(g, self.catalog))

    def test_kind_filter(self):
        g = read_graph(FIXTURES / "fig2_g.graph")
        self.assertIsNone(detect_catalog(g, self.catalog, (ObstructionKind.CROWDED,)))

    def test_missing_required_entries(self):
        partial = parse_catalog(MINIMAL)
        g = read_graph(FIXTURES / "fig1_skeleton.graph")
        with self.assertRaises(CatalogMissing):
            detect_catalog(g, partial)
        self.assertIsNone(detect_catalog(g, partial, require=False))


class TestParseCatalog(unittest.TestCase):
    def test_minimal(self):
        catalog = parse_catalog(MINIMAL)
        self.assertIsInstance(catalog, Catalog)
        self.assertEqual(catalog.names(), ["crowded"])
        self.assertEqual(catalog.entries[0].sources, ("built in",))

    def test_errors(self):
        broken = {
            "unknown kind": "entry x\nkind Bowtie\npending\nend\n",
            "unknown predicate": "entry x\nkind Crowded\npredicate wobbly\nend\n",
            "unclosed": "entry x\nkind Crowded\npending\n",
            "no status": "entry x\nkind Crowded\nend\n",
            "stray line": "kind Crowded\n",
            "not trivalent": "entry x\nkind EnveLoopCatalog\ngraph\nn 2\ne 0 1\ne 0 1\nend\n",
        }
        for label, text in broken.items():
            with self.subTest(label):
                with self.assertRaises(ParseError):
                    parse_catalog(text, "test.txt")

    def test_error_location(self):
        with self.assertRaises(ParseError) as ctx:
            parse_catalog("\n\nentry x\nkind Bowtie\nend\n", "test.txt")
        self.assertEqual(ctx.exception.line, 4)
        self.assertEqual(ctx.exception.source, "test.txt")


if __name__ == "__main__":
    unittest.main()
