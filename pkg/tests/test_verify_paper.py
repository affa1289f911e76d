import io
import logging
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from rich.console import Console

from shared.config import Config
from shared.log_handler import MemoryLogHandler
from troplanar.corpus import FIXTURES
from troplanar.errors import LimitExceeded
from troplanar.verify_paper import CensusComparison, ModeTally, PaperVerifier


def quiet_console() -> Console:
    return Console(file=io.StringIO(), width=200)


class TestSelectedChecks(unittest.TestCase):
    def test_fixture_checks_pass(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        self.assertTrue(verifier.run_checks(only=["Fig 1 pipeline", "fig 2"]))
        self.assertEqual(set(verifier.timings), {"Fig 1 pipeline", "Fig 2 rejections"})

    def test_fig1_parallelogram(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        self.assertTrue(verifier.check_fig1_parallelogram())

    def test_small_sweep(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        verifier.sweep_points = 6
        self.assertTrue(verifier.check_lemma_abz())
        self.assertTrue(verifier.check_betti())
        self.assertTrue(verifier.check_enumerators())
        stats = verifier.sweep()
        self.assertGreater(stats.triangulations, 0)
        self.assertEqual(stats.abz_violations, [])


class TestFailures(unittest.TestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.tmp)
        fixtures = self.tmp / "fixtures"
        shutil.copytree(FIXTURES, fixtures)
        shutil.copy(FIXTURES / "fig10.tri", fixtures / "fig1.tri")
        self.fixtures = fixtures

    def test_wrong_fixture_fails(self):
        console = quiet_console()
        verifier = PaperVerifier(Config(), console=console, fixtures=self.fixtures)
        self.assertFalse(verifier.run_checks(only=["Fig 1 pipeline"]))
        output = console.file.getvalue()
        self.assertIn("Fig 1 pipeline failed", output)
        self.assertIn("4 vertices", output)

    def test_failure_shows_recent_log(self):
        console = quiet_console()
        memory = MemoryLogHandler()
        log = logging.getLogger("troplanar.test_verify_paper")
        log.addHandler(memory)
        self.addCleanup(log.removeHandler, memory)
        log.warning("sweep stopped early")

        verifier = PaperVerifier(Config(), console=console, memory=memory, fixtures=self.fixtures)
        self.assertFalse(verifier.run_checks(only=["Fig 1 pipeline"]))
        output = console.file.getvalue()
        self.assertIn("Recent log:", output)
        self.assertIn("sweep stopped early", output)

    def test_library_errors_fail_the_check(self):
        def boom():
            raise LimitExceeded("too many lattice points")

        console = quiet_console()
        verifier = PaperVerifier(Config(), console=console)
        with patch.object(PaperVerifier, "checks", return_value=[("Boom", boom)]):
            self.assertFalse(verifier.run_checks())
        output = console.file.getvalue()
        self.assertIn("LimitExceeded: too many lattice points", output)
        self.assertIn("Boom failed", output)


class TestCensusComparison(unittest.TestCase):
    def test_genus4_small_corpus(self):
        verifier = PaperVerifier(Config(corpus_max_points=9), console=quiet_console())
        self.assertTrue(verifier.check_genus4())
        comparison = verifier.comparisons[4]
        self.assertEqual(comparison.points, 9)
        self.assertEqual(set(comparison.modes), {"catalog", "catalog-free"})
        catalog, catalog_free = comparison.modes["catalog"], comparison.modes["catalog-free"]
        self.assertGreater(catalog_free.graphs, 0)
        self.assertLessEqual(catalog_free.graphs, catalog.graphs)
        self.assertEqual(catalog.unsound, [])
        self.assertEqual(catalog_free.unsound, [])
        self.assertEqual(catalog.realized, len(comparison.realized))
        self.assertEqual(comparison.not_generated, [])
        self.assertEqual(comparison.structural_failures, [])

    def test_full_mode_uses_the_largest_polygons(self):
        verifier = PaperVerifier(Config(), full=True, console=quiet_console())
        self.assertEqual(verifier._census_points(3), 16)
        self.assertEqual(verifier._census_points(4), 19)
        self.assertEqual(PaperVerifier(Config(corpus_max_points=9))._census_points(4), 9)

    def test_rejected_realized_graph_fails(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        comparison = CensusComparison(4, 9, 3, {"cert"})
        comparison.modes["catalog-free"] = ModeTally(graphs=1, realized=1, unsound=["cert: SprawlingNode"])
        self.assertFalse(verifier._judge(comparison, complete=False))
        self.assertIn("realized, not classified troplanar", verifier.console.file.getvalue())

    def test_unrealized_troplanar_graph_fails_only_on_a_complete_corpus(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        comparison = CensusComparison(4, 9, 3, set())
        comparison.modes["catalog"] = ModeTally(graphs=1, troplanar=1, unrealized=["cert"])
        self.assertTrue(verifier._judge(comparison, complete=False))
        self.assertFalse(verifier._judge(comparison, complete=True))

    def test_structural_failures_fail(self):
        verifier = PaperVerifier(Config(), console=quiet_console())
        comparison = CensusComparison(4, 9, 1, set())
        comparison.structural_records = 1
        comparison.structural_failures.append("0,0;1,0;0,1: shared edge (missing)")
        self.assertFalse(verifier._judge(comparison, complete=False))


if __name__ == "__main__":
    unittest.main()
