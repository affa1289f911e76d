import unittest
from types import SimpleNamespace

from troplanar.catalog import load_catalog, parse_catalog
from troplanar.classifier import NotTroplanar, Troplanar, Unknown, classify, obstructed_anchor
from troplanar.corpus import FIXTURES, load_witnesses
from troplanar.errors import Disconnected, GenusOutOfRange
from troplanar.formats import read_graph
from troplanar.generation import DUMBBELL, THETA, enumerate_trivalent_planar
from troplanar.graphs import Circle, Skeleton, from_edges
from troplanar.obstructions import Obstruction, ObstructionKind
from troplanar.oracle import find_witness

FIG2_KINDS = {
    "a": ObstructionKind.HEAVY_ONE_LOOP,
    "b": ObstructionKind.HEAVY_ONE_LOOP,
    "c": ObstructionKind.HEAVY_ONE_LOOP,
    "d": ObstructionKind.HEAVY_ONE_LOOP,
    "e": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
    "f": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
    "g": ObstructionKind.ENVE_LOOP_CATALOG,
    "h": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
}

TRIPOD = from_edges([(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])
CUBE = from_edges(
    [(i, (i + 1) % 4) for i in range(4)] + [(i + 4, (i + 1) % 4 + 4) for i in range(4)] + [(i, i + 4) for i in range(4)]
)
# one loop and two theta graphs hung from a common vertex
SPRAWLING_GENUS_FIVE = from_edges([
    (0, 1), (1, 1),
    (0, 2), (2, 3), (2, 4), (3, 4), (3, 4),
    (0, 5), (5, 6), (5, 7), (6, 7), (6, 7),
])
PRISM_GENUS_SEVEN = from_edges(
    [(i, (i + 1) % 6) for i in range(6)] + [(i + 6, (i + 1) % 6 + 6) for i in range(6)] + [(i, i + 6) for i in range(6)]
)


def verdict(g, **kwargs):
    return classify(g, search_witness=False, **kwargs)


class TestLowGenus(unittest.TestCase):
    def test_circle_and_genus_two(self):
        for g in (Circle(), THETA, DUMBBELL):
            self.assertIsInstance(verdict(g), Troplanar)

    def test_genus_three(self):
        results = {g.certificate: verdict(g) for g in enumerate_trivalent_planar(3)}
        troplanar = [c for c, v in results.items() if isinstance(v, Troplanar)]
        rejected = [v for v in results.values() if isinstance(v, NotTroplanar)]
        self.assertEqual(len(troplanar), 4)
        self.assertEqual(len(rejected), 1)
        self.assertEqual(rejected[0].obstruction.kind, ObstructionKind.SPRAWLING_NODE)
        self.assertEqual(results[TRIPOD.certificate], rejected[0])


class TestGenusSix(unittest.TestCase):
    def test_unrealizable_graphs(self):
        catalog = load_catalog()
        for letter, kind in FIG2_KINDS.items():
            with self.subTest(graph=letter):
                result = verdict(read_graph(FIXTURES / f"fig2_{letter}.graph"), catalog=catalog)
                self.assertIsInstance(result, NotTroplanar)
                self.assertEqual(result.obstruction.kind, kind)

    def test_realized_skeletons_need_a_witness(self):
        witnesses = load_witnesses()
        for name in ("fig1_skeleton.graph", "fig10_skeleton.graph"):
            with self.subTest(graph=name):
                g = read_graph(FIXTURES / name)
                # genus five pieces stay open while the TIE-fighter entry is pending
                self.assertIsInstance(verdict(g), Unknown)
                result = classify(g, finder=lambda h: find_witness(h, polygons=[], witnesses=witnesses))
                self.assertIsInstance(result, Troplanar)
                self.assertIsNotNone(result.witness)


class TestUnknownAndWitnesses(unittest.TestCase):
    def test_pending_entry_leaves_genus_five_open(self):
        result = verdict(CUBE)
        self.assertIsInstance(result, Unknown)
        self.assertIn("tie-fighter", result.reason)

    def test_obstruction_beats_pending_entry(self):
        result = verdict(SPRAWLING_GENUS_FIVE)
        self.assertIsInstance(result, NotTroplanar)
        self.assertEqual(result.obstruction.kind, ObstructionKind.SPRAWLING_NODE)

    def test_witness_settles_unknown(self):
        sentinel = object()
        result = classify(CUBE, finder=lambda g: sentinel)
        self.assertIsInstance(result, Troplanar)
        self.assertIs(result.witness, sentinel)

    def test_missing_catalog_entries(self):
        partial = parse_catalog("entry crowded\nkind Crowded\npredicate crowded\nend\n")
        result = verdict(TRIPOD, catalog=partial)
        self.assertIsInstance(result, NotTroplanar)
        k4 = from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        result = verdict(k4, catalog=partial)
        self.assertIsInstance(result, Unknown)
        self.assertIn("enve-loop", result.reason)


class TestPreconditions(unittest.TestCase):
    def test_genus_above_six(self):
        self.assertEqual(PRISM_GENUS_SEVEN.genus, 7)
        with self.assertRaises(GenusOutOfRange):
            verdict(PRISM_GENUS_SEVEN)

    def test_disconnected(self):
        two_thetas = Skeleton(4, ((0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)))
        with self.assertRaises(Disconnected):
            verdict(two_thetas)


class TestObstructedAnchor(unittest.TestCase):
    def test_every_match_at_an_anchor_must_fail(self):
        matches = [
            SimpleNamespace(anchor=(1,), ok=True),
            SimpleNamespace(anchor=(1,), ok=False),
            SimpleNamespace(anchor=(2,), ok=False),
            SimpleNamespace(anchor=(2,), ok=False),
        ]
        failures = []

        def test(m):
            if m.ok:
                return None
            failures.append(m)
            return Obstruction(ObstructionKind.HEAVY_ONE_LOOP, {"at": m.anchor})

        found = obstructed_anchor(matches, test)
        self.assertEqual(found.witness["at"], (2,))
        self.assertIsNone(obstructed_anchor(matches[:2], test))

    def test_no_matches(self):
        self.assertIsNone(obstructed_anchor([], lambda m: None))


class TestVerdictPayloads(unittest.TestCase):
    def test_to_dict(self):
        self.assertEqual(Troplanar().to_dict(), {"verdict": "Troplanar"})
        rejected = NotTroplanar(Obstruction(ObstructionKind.CROWDED, {"entry": "crowded"}))
        self.assertEqual(rejected.to_dict(), {"verdict": "NotTroplanar", "kind": "Crowded", "witness": {"entry": "crowded"}})
        self.assertEqual(Unknown("pending").to_dict(), {"verdict": "Unknown", "reason": "pending"})


if __name__ == "__main__":
    unittest.main()
