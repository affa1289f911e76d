"""
Fixture acceptance suite behind ``troplanar verify-paper``.

Each check is a named callable returning True on success; they run in a
fixed order under a rich status spinner. Sweeps over the generated polygon
corpus stop at 9 lattice points unless ``full`` is set, which extends them
to 11, and the genus 3 and 4 census comparisons to every polygon of their
genus.
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Set, Tuple

from rich.console import Console

from shared.config import Config
from shared.log_handler import MemoryLogHandler
from troplanar.catalog import detect_catalog, load_catalog
from troplanar.classifier import NotTroplanar, Troplanar, classify, obstructed_anchor
from troplanar.corpus import FIXTURES, Witness, polygon_corpus
from troplanar.enumeration import count_triangulations, enumerate_triangulations
from troplanar.errors import LimitExceeded, TroplanarError
from troplanar.formats import read_graph, read_polygon, read_triangulation
from troplanar.fourier_motzkin import RowLimitExceeded
from troplanar.generation import enumerate_trivalent_planar
from troplanar.graphs import Skeleton
from troplanar.lattice import LatticePolygon
from troplanar.obstructions import (
    ObstructionKind,
    detect_double_heavy,
    detect_heavy_cycle,
    detect_sprawling_node,
    double_heavy_two_loops_obstructed,
    far_side_has_cut_edge,
    generate_corollary_graphs,
    heavy_one_loop_obstructed,
)
from troplanar.oracle import (
    CensusRecord,
    census,
    certificates,
    check_lemma_abz,
    check_structural_lemmas,
    find_witness,
)
from troplanar.polygon_checks import validate_polygon_level
from troplanar.regularity import is_regular
from troplanar.skeleton import skeletonize
from troplanar.triangulation import from_triangles, parse_serialization

logger = logging.getLogger(__name__)

DESK_SWEEP_POINTS = 9
FULL_SWEEP_POINTS = 11
CROSS_CHECK_POINTS = 10
SWEEP_MAX_GENUS = 3


def full_census_points(genus: int) -> int:
    """Lattice point bound of the full census: g interior points and at most 2g + 7 boundary points."""
    return 3 * genus + 7


FIG2_KINDS: Dict[str, ObstructionKind] = {
    "a": ObstructionKind.HEAVY_ONE_LOOP,
    "b": ObstructionKind.HEAVY_ONE_LOOP,
    "c": ObstructionKind.HEAVY_ONE_LOOP,
    "d": ObstructionKind.HEAVY_ONE_LOOP,
    "e": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
    "f": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
    "g": ObstructionKind.ENVE_LOOP_CATALOG,
    "h": ObstructionKind.DOUBLE_HEAVY_TWO_LOOPS,
}

# seconds; exceeding one is reported, not failed
BUDGETS: Dict[str, float] = {
    "Fig 1 pipeline": 5.0,
    "Fig 10 pipeline": 30.0,
    "Fig 2 rejections": 10.0,
    "Boundary triangle lemma": 600.0,
}


@dataclass
class SweepStats:
    polygons: int = 0
    triangulations: int = 0
    abz_violations: List[str] = field(default_factory=list)
    betti_mismatches: List[str] = field(default_factory=list)
    backend_disagreements: List[str] = field(default_factory=list)
    fm_skipped: int = 0
    skipped_polygons: int = 0


@dataclass
class ModeTally:
    graphs: int = 0
    troplanar: int = 0
    realized: int = 0
    unsound: List[str] = field(default_factory=list)
    unrealized: List[str] = field(default_factory=list)


@dataclass
class CensusComparison:
    genus: int
    points: int
    polygons: int
    realized: Set[str]
    modes: Dict[str, ModeTally] = field(default_factory=dict)
    not_generated: List[str] = field(default_factory=list)
    unrealized_without_sprawling: List[str] = field(default_factory=list)
    structural_records: int = 0
    structural_failures: List[str] = field(default_factory=list)


class PaperVerifier:
    def __init__(
        self,
        config: Optional[Config] = None,
        full: bool = False,
        console: Optional[Console] = None,
        memory: Optional[MemoryLogHandler] = None,
        fixtures: Path = FIXTURES,
    ):
        self.config = config or Config()
        self.full = full
        self.console = console or Console()
        self.memory = memory
        self.fixtures = fixtures
        self.sweep_points = FULL_SWEEP_POINTS if full else DESK_SWEEP_POINTS
        self.catalog = load_catalog()
        self._sweep: Optional[SweepStats] = None
        self.timings: Dict[str, float] = {}
        self.comparisons: Dict[int, CensusComparison] = {}

    def _fixture(self, name: str) -> Path:
        return self.fixtures / name

    def _note(self, message: str):
        self.console.print(message, style="dim", markup=False, highlight=False)

    # --- fixtures ----------------------------------------------------------------------------

    def check_fig1(self) -> bool:
        """Genus 6 pentagon, skeleton equal to the bundled one, double heavy match present."""
        tri = read_triangulation(self._fixture("fig1.tri"))
        polygon = tri.polygon
        if polygon.genus != 6 or len(polygon.vertices) != 5:
            self._note(f"fig1 polygon has genus {polygon.genus} and {len(polygon.vertices)} vertices")
            return False
        skeleton = skeletonize(tri).skeleton
        expected = read_graph(self._fixture("fig1_skeleton.graph"))
        if skeleton.genus != 6 or skeleton.certificate != expected.certificate:
            self._note(f"fig1 skeleton {skeleton.certificate} differs from {expected.certificate}")
            return False
        assert isinstance(skeleton, Skeleton)
        matches = detect_double_heavy(skeleton)
        self._note(f"{len(matches)} double heavy matches")
        return bool(matches)

    def check_fig10(self) -> bool:
        """Genus two far side without cut edge, and a witness on the Fig 10 polygon."""
        tri = read_triangulation(self._fixture("fig10.tri"))
        skeleton = skeletonize(tri).skeleton
        expected = read_graph(self._fixture("fig10_skeleton.graph"))
        if skeleton.certificate != expected.certificate:
            self._note(f"fig10 skeleton {skeleton.certificate} differs from {expected.certificate}")
            return False
        assert isinstance(skeleton, Skeleton)
        one_loop = [
            m
            for m in detect_heavy_cycle(skeleton)
            if m.kind == "one-loop" and m.g2_genus == 2 and not far_side_has_cut_edge(skeleton, m.g2, m.e2)
        ]
        if not one_loop:
            self._note("no one-loop match with a genus two side free of cut edges")
            return False

        polygon = read_polygon(self._fixture("fig10.poly"))
        bundled = [Witness(tri.polygon, tri, str(self._fixture("fig10.tri")))]

        def finder(g):
            return find_witness(g, polygons=[polygon], witnesses=bundled)

        verdict = classify(skeleton, self.catalog, finder=finder)
        self._note(f"classify: {verdict.name}")
        return isinstance(verdict, Troplanar) and verdict.witness is not None

    def check_fig2(self) -> bool:
        ok = True
        for letter, kind in FIG2_KINDS.items():
            g = read_graph(self._fixture(f"fig2_{letter}.graph"))
            verdict = classify(g, self.catalog, search_witness=False)
            got = verdict.obstruction.kind if isinstance(verdict, NotTroplanar) else verdict.name
            if got != kind:
                self._note(f"fig2_{letter}: expected {kind.value}, got {getattr(got, 'value', got)}")
                ok = False
        return ok

    def check_corollary(self) -> bool:
        graphs = generate_corollary_graphs(20, seed=0)
        if len(graphs) != 20:
            self._note(f"generator produced {len(graphs)} graphs, wanted 20")
            return False
        rejected = 0
        for g in graphs:
            one = [m for m in detect_heavy_cycle(g) if m.kind == "one-loop"]
            if obstructed_anchor(one, lambda m: heavy_one_loop_obstructed(g, m)) is not None:
                rejected += 1
            else:
                self._note(f"not rejected: genus {g.genus} {g.certificate}")
        self._note(f"{rejected}/{len(graphs)} rejected")
        return rejected == len(graphs)

    # --- corpus sweeps -----------------------------------------------------------------------

    def _sweep_polygons(self) -> List[LatticePolygon]:
        return [p for genus in range(SWEEP_MAX_GENUS + 1) for p in polygon_corpus(genus, self.sweep_points)]

    def sweep(self) -> SweepStats:
        """One pass over every triangulation of the swept polygons, shared by three checks."""
        if self._sweep is not None:
            return self._sweep
        stats = SweepStats()
        for polygon in self._sweep_polygons():
            stats.polygons += 1
            try:
                triangulations = list(enumerate_triangulations(polygon, self.config.lattice_point_limit))
            except LimitExceeded as e:
                logger.warning(f"Skipping {polygon}: {e}")
                stats.skipped_polygons += 1
                continue
            for tri in triangulations:
                stats.triangulations += 1
                for check in check_lemma_abz(tri).failures:
                    stats.abz_violations.append(f"{polygon}: {check.name} ({check.detail})")
                if polygon.genus > 0:
                    betti = skeletonize(tri).genus
                    if betti != polygon.genus:
                        stats.betti_mismatches.append(f"{tri.serialize()}: betti {betti}, genus {polygon.genus}")
                simplex = bool(is_regular(tri, backend="simplex"))
                try:
                    fm = bool(is_regular(tri, backend="fm", fm_row_limit=self.config.fm_row_limit))
                except RowLimitExceeded:
                    stats.fm_skipped += 1
                    continue
                if fm != simplex:
                    stats.backend_disagreements.append(f"{tri.serialize()}: fm={fm} simplex={simplex}")
        logger.info(
            f"Swept {stats.triangulations} triangulations of {stats.polygons} polygons (<= {self.sweep_points} points)"
        )
        self._sweep = stats
        return stats

    def check_lemma_abz(self) -> bool:
        stats = self.sweep()
        self._note(f"{stats.triangulations} triangulations of {stats.polygons} polygons")
        for line in stats.abz_violations[:5]:
            self._note(line)
        return not stats.abz_violations

    def check_betti(self) -> bool:
        stats = self.sweep()
        for line in stats.betti_mismatches[:5]:
            self._note(line)
        return not stats.betti_mismatches

    def check_enumerators(self) -> bool:
        ok = True
        bound = min(CROSS_CHECK_POINTS, self.sweep_points)
        compared = 0
        for polygon in self._sweep_polygons():
            if len(polygon.lattice_points) > bound:
                continue
            flips = count_triangulations(polygon, "flip")
            tracked = count_triangulations(polygon, "backtracking")
            compared += 1
            if flips != tracked:
                self._note(f"{polygon}: flip {flips}, backtracking {tracked}")
                ok = False
        stats = self.sweep()
        for line in stats.backend_disagreements[:5]:
            self._note(line)
        self._note(
            f"{compared} polygons counted both ways; "
            f"{stats.triangulations - stats.fm_skipped} regularity verdicts compared, {stats.fm_skipped} past the FM budget"
        )
        return ok and not stats.backend_disagreements

    def _census_points(self, genus: int) -> int:
        return full_census_points(genus) if self.full else self.config.corpus_max_points

    def _check_structural(self, records: Set[CensusRecord], comparison: CensusComparison) -> None:
        """Run the heavy cycle lemma checks on every record whose skeleton has a heavy or double heavy match."""
        heavy: Dict[str, bool] = {}
        for record in sorted(records):
            cert = record.skeleton_certificate
            if heavy.get(cert) is False:
                continue
            tri = from_triangles(parse_serialization(record.triangulation))
            skeleton = skeletonize(tri).skeleton
            if cert not in heavy:
                heavy[cert] = isinstance(skeleton, Skeleton) and bool(
                    detect_heavy_cycle(skeleton) or detect_double_heavy(skeleton)
                )
                if not heavy[cert]:
                    continue
            report = check_structural_lemmas(tri, skeleton)
            comparison.structural_records += 1
            for check in report.failures:
                comparison.structural_failures.append(f"{record.triangulation}: {check.name} ({check.detail})")

    def compare_with_census(self, genus: int) -> CensusComparison:
        """Classify every candidate of one genus and compare with the regular census of that genus.

        Graphs no catalog entry matches are also tallied on their own, so the
        comparison does not hinge on transcribed catalog data.
        """
        points = self._census_points(genus)
        polygons = polygon_corpus(genus, points)
        records = census(
            polygons,
            regular_only=True,
            workers=self.config.workers,
            limit=self.config.lattice_point_limit,
            fm_max_variables=self.config.fm_max_variables,
            fm_row_limit=self.config.fm_row_limit,
        )
        comparison = CensusComparison(genus, points, len(polygons), set(certificates(records)))
        self._check_structural(records, comparison)

        pending = bool(self.catalog.pending(genus))
        generated: Set[str] = set()
        for g in enumerate_trivalent_planar(genus):
            generated.add(g.certificate)
            verdict = classify(g, self.catalog, search_witness=False)
            realized = g.certificate in comparison.realized
            if not realized and detect_sprawling_node(g) is None:
                comparison.unrealized_without_sprawling.append(g.certificate)
            modes = ["catalog"]
            if not pending and detect_catalog(g, self.catalog, require=False) is None:
                modes.append("catalog-free")
            for mode in modes:
                tally = comparison.modes.setdefault(mode, ModeTally())
                tally.graphs += 1
                tally.realized += realized
                if isinstance(verdict, Troplanar):
                    tally.troplanar += 1
                    if not realized:
                        tally.unrealized.append(g.certificate)
                elif realized:
                    label = verdict.obstruction.kind.value if isinstance(verdict, NotTroplanar) else verdict.name
                    tally.unsound.append(f"{g.certificate}: {label}")
        comparison.not_generated = sorted(comparison.realized - generated)
        self.comparisons[genus] = comparison
        return comparison

    def _judge(self, comparison: CensusComparison, complete: bool) -> bool:
        """Realized graphs must never be rejected; troplanar graphs must be realized when the corpus is complete."""
        ok = True
        for mode, tally in comparison.modes.items():
            self._note(
                f"{mode}: {tally.graphs} graphs, {tally.troplanar} troplanar, {tally.realized} realized, "
                f"{len(tally.unsound)} realized but rejected, {len(tally.unrealized)} troplanar but not realized"
            )
            for line in tally.unsound[:5]:
                self._note(f"  realized, not classified troplanar: {line}")
            if tally.unsound:
                ok = False
            if tally.unrealized:
                for cert in tally.unrealized[:5]:
                    self._note(f"  classified troplanar, not in census: {cert}")
                if complete:
                    ok = False
        for cert in comparison.not_generated[:5]:
            self._note(f"in census, missing from the generated candidates: {cert}")
        if comparison.not_generated:
            ok = False
        self._note(
            f"{comparison.structural_records} census records with heavy matches checked, "
            f"{len(comparison.structural_failures)} failures"
        )
        for line in comparison.structural_failures[:5]:
            self._note(f"  {line}")
        if comparison.structural_failures:
            ok = False
        self._note(
            f"{len(comparison.realized)} realized over {comparison.polygons} polygons (<= {comparison.points} points)"
        )
        return ok

    def check_genus3(self) -> bool:
        comparison = self.compare_with_census(3)
        ok = self._judge(comparison, complete=True)
        # at genus 3 every unrealized graph has a sprawling node
        for cert in comparison.unrealized_without_sprawling:
            self._note(f"unrealized without a sprawling node: {cert}")
            ok = False
        return ok

    def check_genus4(self) -> bool:
        # the desk corpus stops short of the largest genus 4 polygons
        return self._judge(self.compare_with_census(4), complete=self.full)

    def check_fig1_parallelogram(self) -> bool:
        tri = read_triangulation(self._fixture("fig1.tri"))
        skeleton = skeletonize(tri).skeleton
        assert isinstance(skeleton, Skeleton)
        for match in detect_double_heavy(skeleton):
            try:
                report = validate_polygon_level(tri, skeleton, match)
            except TroplanarError as e:
                self._note(f"match on {list(match.cycle)}: {e}")
                continue
            parallelogram = [c for c in report.checks if "parallelogram" in c.name]
            meet = double_heavy_two_loops_obstructed(skeleton, match) is None
            if parallelogram and all(c.passed for c in parallelogram) and meet:
                return True
            self._note(
                f"match on {list(match.cycle)}: parallelogram={[c.passed for c in parallelogram]} three cycles meet={meet}"
            )
        return False

    # --- runner ------------------------------------------------------------------------------

    def checks(self) -> List[Tuple[str, Callable[[], bool]]]:
        return [
            ("Fig 1 pipeline", self.check_fig1),
            ("Fig 10 pipeline", self.check_fig10),
            ("Fig 2 rejections", self.check_fig2),
            ("Heavy one-loop corollary", self.check_corollary),
            ("Boundary triangle lemma", self.check_lemma_abz),
            ("Betti number equals genus", self.check_betti),
            ("Enumerator and backend cross-checks", self.check_enumerators),
            ("Genus 3 end-to-end", self.check_genus3),
            ("Genus 4 census agreement", self.check_genus4),
            ("Fig 1 unit parallelogram", self.check_fig1_parallelogram),
        ]

    def _run_one(self, name: str, check_func: Callable[[], bool]) -> bool:
        start = time.perf_counter()
        try:
            passed = check_func()
        except TroplanarError as e:
            self._note(f"{type(e).__name__}: {e}")
            passed = False
        self.timings[name] = time.perf_counter() - start
        return passed

    def run_checks(self, only: Optional[List[str]] = None) -> bool:
        """Run all checks (or those whose name contains one of ``only``); True when all pass."""
        selected = [
            (name, func)
            for name, func in self.checks()
            if not only or any(word.lower() in name.lower() for word in only)
        ]
        all_passed = True
        with self.console.status("[bold green]Verifying fixtures...") as status:
            for name, check_func in selected:
                status.update(f"[bold green]Checking {name}...")
                passed = self._run_one(name, check_func)
                seconds = self.timings[name]
                if passed:
                    self.console.print(f"[green]✓ {name} passed[/green] [dim]({seconds:.1f}s)[/dim]")
                else:
                    self.console.print(f"[red]✗ {name} failed[/red] [dim]({seconds:.1f}s)[/dim]")
                    all_passed = False
                budget = BUDGETS.get(name)
                if budget is not None and seconds > budget:
                    self.console.print(f"[yellow]! {name} took {seconds:.1f}s, budget {budget:.0f}s[/yellow]")

        if not all_passed and self.memory is not None:
            self.console.print("[bold]Recent log:[/bold]")
            for line in self.memory.tail(20):
                self.console.print(line, style="dim", markup=False, highlight=False)
        return all_passed
