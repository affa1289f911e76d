import tempfile
import unittest
from pathlib import Path

from shared.telemetry import CensusMetrics
from troplanar.corpus import BUNDLED_CORPUS, FIXTURES, load_witnesses, polygon_corpus
from troplanar.enumeration import enumerate_triangulations
from troplanar.errors import ParseError
from troplanar.formats import read_graph, read_triangulation
from troplanar.generation import DUMBBELL, THETA
from troplanar.graphs import from_edges
from troplanar.oracle import (
    CensusRecord,
    census,
    certificates,
    check_lemma_abz,
    check_structural_lemmas,
    find_witness,
    read_census,
    write_census,
)
from troplanar.skeleton import skeletonize

TRIPOD = from_edges([(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])


class TestCensus(unittest.TestCase):
    def test_genus_one(self):
        records = census(polygon_corpus(1, 6))
        self.assertTrue(records)
        self.assertEqual(certificates(records), ["circle"])
        self.assertTrue(all(r.regular for r in records))

    def test_genus_two_realizes_both_graphs(self):
        records = census(polygon_corpus(2, 8))
        self.assertEqual(set(certificates(records)), {THETA.certificate, DUMBBELL.certificate})

    def test_all_triangulations_include_regular_ones(self):
        polygons = polygon_corpus(1, 6)
        regular = census(polygons)
        everything = census(polygons, regular_only=False)
        self.assertLessEqual(regular, everything)
        self.assertEqual({r for r in everything if r.regular}, regular)

    def test_limit_skips_polygons(self):
        polygons = polygon_corpus(1, 6)
        small = [p for p in polygons if len(p.lattice_points) <= 5]
        metrics = CensusMetrics()
        records = census(polygons, limit=5, metrics=metrics)
        self.assertEqual(records, census(small))
        self.assertEqual(metrics.value("troplanar_polygons_skipped_total"), len(polygons) - len(small))
        self.assertEqual(metrics.value("troplanar_distinct_skeletons"), 1)

    def test_workers_do_not_change_the_result(self):
        polygons = polygon_corpus(1, 5)
        self.assertEqual(census(polygons, workers=2), census(polygons, workers=1))


class TestCensusFile(unittest.TestCase):
    def test_round_trip(self):
        records = census(polygon_corpus(1, 5))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "census.tsv"
            write_census(records, path)
            self.assertEqual(read_census(path), records)
            lines = path.read_text().splitlines()
            self.assertEqual(lines, sorted(lines))

    def test_record_line(self):
        record = CensusRecord("nf", "tri", True, "circle")
        self.assertEqual(record.to_line(), "nf\ttri\ttrue\tcircle")
        self.assertEqual(CensusRecord.from_line(record.to_line()), record)

    def test_bad_lines(self):
        for line in ("nf\ttri\ttrue", "nf\ttri\tyes\tcircle"):
            with self.subTest(line=line):
                with self.assertRaises(ParseError):
                    CensusRecord.from_line(line, 3, "census.tsv")


class TestFindWitness(unittest.TestCase):
    def test_generated_polygons(self):
        witness = find_witness(THETA, polygons=polygon_corpus(2, 7), witnesses=[])
        self.assertIsNotNone(witness)
        self.assertEqual(skeletonize(witness.triangulation).skeleton.certificate, THETA.certificate)

    def test_unrealizable_graph(self):
        self.assertIsNone(find_witness(TRIPOD, polygons=polygon_corpus(3, 8), witnesses=[]))

    def test_bundled_witness(self):
        g = read_graph(FIXTURES / "fig1_skeleton.graph")
        witness = find_witness(g, polygons=[], witnesses=load_witnesses())
        self.assertIsNotNone(witness)
        self.assertTrue(witness.source.endswith("fig1.tri"))

    def test_other_genus_is_ignored(self):
        self.assertIsNone(find_witness(THETA, polygons=polygon_corpus(1, 6), witnesses=[]))


class TestLemmaChecks(unittest.TestCase):
    def test_boundary_triangle_lemma(self):
        for name in ("fig1.tri", "fig10.tri"):
            with self.subTest(name=name):
                report = check_lemma_abz(read_triangulation(FIXTURES / name))
                self.assertTrue(report.passed, [c.detail for c in report.failures])

    def test_boundary_triangle_lemma_on_the_corpus(self):
        for polygon in polygon_corpus(2, 7):
            for tri in enumerate_triangulations(polygon):
                self.assertTrue(check_lemma_abz(tri).passed, tri.serialize())

    def test_structural_lemmas_hold_on_a_witness(self):
        tri = read_triangulation(FIXTURES / "fig10.tri")
        report = check_structural_lemmas(tri)
        self.assertTrue(report.checks)
        self.assertTrue(report.passed, [f"{c.name}: {c.detail}" for c in report.failures])

    def test_structural_lemmas_check_something_on_both_fixtures(self):
        for name in ("fig1.tri", "fig10.tri"):
            with self.subTest(name=name):
                report = check_structural_lemmas(read_triangulation(FIXTURES / name))
                self.assertGreater(len(report.checks), 1)
                self.assertIn("heavy matches map to the triangulation", [c.name for c in report.checks])
                self.assertNotIn("heavy matches map to the triangulation", [c.name for c in report.failures])

    def test_unmapped_matches_fail(self):
        fig1 = skeletonize(read_triangulation(FIXTURES / "fig1.tri")).skeleton
        report = check_structural_lemmas(read_triangulation(FIXTURES / "fig10.tri"), fig1)
        self.assertFalse(report.passed)
        self.assertEqual([c.name for c in report.failures], ["heavy matches map to the triangulation"])
        self.assertTrue(report.failures[0].detail.startswith("0 of "))

    def test_genus_two_is_vacuous(self):
        tri = read_triangulation(BUNDLED_CORPUS / "theta.tri")
        self.assertEqual(check_structural_lemmas(tri).checks, [])


if __name__ == "__main__":
    unittest.main()
