import unittest

from troplanar.corpus import FIXTURES
from troplanar.errors import MatchDoesNotMapToTriangulation, TroplanarError
from troplanar.formats import read_triangulation
from troplanar.obstructions import detect_double_heavy, detect_heavy_cycle, far_side_has_cut_edge
from troplanar.polygon_checks import Report, check_split_lines_meet, validate_polygon_level
from troplanar.skeleton import skeletonize


def realized_reports(tri, skeleton, matches, **kwargs):
    reports = []
    for match in matches:
        try:
            reports.append((match, validate_polygon_level(tri, skeleton, match, **kwargs)))
        except MatchDoesNotMapToTriangulation:
            continue
    return reports


class TestReport(unittest.TestCase):
    def test_passed_and_failures(self):
        report = Report("demo")
        self.assertTrue(report.passed)
        report.add("holds", True)
        report.add("breaks", 0, "detail")
        self.assertFalse(report.passed)
        self.assertEqual([c.name for c in report.failures], ["breaks"])
        self.assertIs(report.checks[1].passed, False)


class TestOneLoopWitness(unittest.TestCase):
    def setUp(self):
        self.tri = read_triangulation(FIXTURES / "fig10.tri")
        self.skeleton = skeletonize(self.tri).skeleton
        self.matches = [
            m for m in detect_heavy_cycle(self.skeleton)
            if m.kind == "one-loop" and not far_side_has_cut_edge(self.skeleton, m.g2, m.e2)
        ]

    def test_some_match_satisfies_every_check(self):
        reports = realized_reports(self.tri, self.skeleton, self.matches)
        self.assertTrue(reports)
        self.assertTrue(any(r.passed for _, r in reports))
        names = {c.name for _, r in reports for c in r.checks}
        self.assertIn("heavy component is hyperelliptic", names)
        self.assertIn("genus two side has no nontrivial split", names)

    def test_lemmas_only_drops_shape_checks(self):
        for _, report in realized_reports(self.tri, self.skeleton, self.matches, lemmas_only=True):
            self.assertFalse(any("hyperelliptic" in c.name for c in report.checks))

    def test_split_lines_meet_on_the_boundary(self):
        points = []
        for match, report in realized_reports(self.tri, self.skeleton, self.matches):
            if report.passed:
                points.append(check_split_lines_meet(self.tri, self.skeleton, match))
        self.assertTrue(points)
        self.assertTrue(all(w is not None and self.tri.polygon.on_boundary(w) for w in points))


class TestDoubleHeavyWitness(unittest.TestCase):
    def test_unit_parallelogram(self):
        tri = read_triangulation(FIXTURES / "fig1.tri")
        skeleton = skeletonize(tri).skeleton
        reports = realized_reports(tri, skeleton, detect_double_heavy(skeleton))
        self.assertTrue(reports)
        parallelogram = [
            c for _, r in reports for c in r.checks if c.name == "heavy component interior hull is a unit parallelogram"
        ]
        self.assertTrue(parallelogram)
        self.assertTrue(any(c.passed for c in parallelogram))


class TestMismatch(unittest.TestCase):
    def test_other_skeleton_is_rejected(self):
        fig1 = read_triangulation(FIXTURES / "fig1.tri")
        fig10 = read_triangulation(FIXTURES / "fig10.tri")
        skeleton = skeletonize(fig1).skeleton
        match = detect_double_heavy(skeleton)[0]
        with self.assertRaises(MatchDoesNotMapToTriangulation):
            validate_polygon_level(fig10, skeleton, match)
        self.assertTrue(issubclass(MatchDoesNotMapToTriangulation, TroplanarError))


if __name__ == "__main__":
    unittest.main()
