"""
Realizability Oracle
====================

Brute-force ground truth over a polygon corpus: every full triangulation is
skeletonized and recorded, regular ones marked as such. The records answer
"is this graph realized?" by certificate lookup and feed the property checks
of the structural lemmas.
"""

import concurrent.futures
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from shared.config import DEFAULT_CORPUS_MAX_POINTS, DEFAULT_FM_MAX_VARIABLES, DEFAULT_FM_ROW_LIMIT
from shared.telemetry import CensusMetrics
from troplanar.corpus import Witness, load_witnesses, polygons_for
from troplanar.enumeration import enumerate_triangulations
from troplanar.errors import LimitExceeded, MatchDoesNotMapToTriangulation, ParseError
from troplanar.graphs import Circle, Graph
from troplanar.lattice import LatticePolygon, normal_form, polygon_key
from troplanar.obstructions import detect_double_heavy, detect_heavy_cycle
from troplanar.polygon_checks import Report, validate_polygon_level
from troplanar.regularity import is_regular
from troplanar.skeleton import skeletonize
from troplanar.triangulation import Triangulation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CensusRecord:
    polygon_normal_form: str
    triangulation: str
    regular: bool
    skeleton_certificate: str

    def to_line(self) -> str:
        flag = "true" if self.regular else "false"
        return f"{self.polygon_normal_form}\t{self.triangulation}\t{flag}\t{self.skeleton_certificate}"

    @classmethod
    def from_line(cls, line: str, number: int = 0, source: Optional[str] = None) -> "CensusRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise ParseError(f"expected 4 tab-separated fields, got {len(parts)}", number, 1, source)
        if parts[2] not in ("true", "false"):
            raise ParseError(f"regular flag must be true or false, got '{parts[2]}'", number, 1, source)
        return cls(parts[0], parts[1], parts[2] == "true", parts[3])


@dataclass(frozen=True)
class _PolygonResult:
    records: Tuple[CensusRecord, ...]
    skipped: Optional[str]
    seconds: float


def _census_polygon(
    polygon: LatticePolygon,
    regular_only: bool,
    limit: Optional[int],
    fm_max_variables: int,
    fm_row_limit: int,
) -> _PolygonResult:
    start = time.perf_counter()
    nf = polygon_key(normal_form(polygon))
    records = []
    try:
        for tri in enumerate_triangulations(polygon, limit):
            cert = skeletonize(tri).skeleton.certificate
            regular = bool(is_regular(tri, fm_max_variables=fm_max_variables, fm_row_limit=fm_row_limit))
            if regular_only and not regular:
                continue
            records.append(CensusRecord(nf, tri.serialize(), regular, cert))
    except LimitExceeded as e:
        return _PolygonResult((), str(e), time.perf_counter() - start)
    return _PolygonResult(tuple(records), None, time.perf_counter() - start)


def census(
    polygons: Sequence[LatticePolygon],
    regular_only: bool = True,
    workers: int = 1,
    limit: Optional[int] = None,
    metrics: Optional[CensusMetrics] = None,
    fm_max_variables: int = DEFAULT_FM_MAX_VARIABLES,
    fm_row_limit: int = DEFAULT_FM_ROW_LIMIT,
) -> Set[CensusRecord]:
    """Record every (regular) triangulation of every polygon with its skeleton certificate.

    Polygons above the lattice point limit are skipped with a warning. The
    result does not depend on ``workers``.
    """
    args = [(p, regular_only, limit, fm_max_variables, fm_row_limit) for p in polygons]
    if workers > 1 and len(args) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_census_polygon, *zip(*args)))
    else:
        results = [_census_polygon(*a) for a in args]

    records: Set[CensusRecord] = set()
    for polygon, result in zip(polygons, results):
        if result.skipped:
            logger.warning(f"Skipping {polygon}: {result.skipped}")
            if metrics:
                metrics.skipped()
            continue
        records.update(result.records)
        if metrics:
            metrics.polygon_done(result.seconds)
            for r in result.records:
                metrics.triangulation(r.regular)
    if metrics:
        metrics.distinct_skeletons(len({r.skeleton_certificate for r in records}))
    logger.info(
        f"Census: {len(records)} records, {len({r.skeleton_certificate for r in records})} distinct skeletons "
        f"over {len(polygons)} polygons"
    )
    return records


def write_census(records: Iterable[CensusRecord], path: Union[str, Path]) -> None:
    Path(path).write_text("".join(r.to_line() + "\n" for r in sorted(records)))


def read_census(path: Union[str, Path]) -> Set[CensusRecord]:
    out = set()
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if line.strip():
            out.add(CensusRecord.from_line(line, number, str(path)))
    return out


def _is_witness(tri: Triangulation, certificate: str) -> bool:
    if tri.genus == 0:
        return False
    return skeletonize(tri).skeleton.certificate == certificate and bool(is_regular(tri))


def find_witness(
    g: Graph,
    polygons: Optional[Sequence[LatticePolygon]] = None,
    witnesses: Optional[Sequence[Witness]] = None,
    max_points: int = DEFAULT_CORPUS_MAX_POINTS,
    limit: Optional[int] = None,
) -> Optional[Witness]:
    """A regular triangulation whose skeleton is g.

    Bundled witness triangulations are tried first, then every triangulation
    of the corpus polygons of g's genus. Polygons of another genus are ignored.
    """
    genus = g.genus
    certificate = g.certificate
    if witnesses is None and polygons is None:
        witnesses = load_witnesses()
    for w in witnesses or ():
        if w.polygon.genus == genus and _is_witness(w.triangulation, certificate):
            logger.debug(f"{certificate} realized by bundled witness {w.source}")
            return w

    if polygons is None:
        polygons = polygons_for(genus, max_points)
    for polygon in polygons:
        if polygon.genus != genus:
            continue
        try:
            for tri in enumerate_triangulations(polygon, limit):
                if _is_witness(tri, certificate):
                    logger.debug(f"{certificate} realized on {polygon}")
                    return Witness(polygon, tri)
        except LimitExceeded as e:
            logger.warning(f"Skipping {polygon}: {e}")
    logger.info(f"No witness for {certificate} over {len(polygons)} polygons (not a proof of non-realizability)")
    return None


def check_lemma_abz(tri: Triangulation) -> Report:
    """For each triangle {a, b, z} with a, b boundary non-vertices and z interior:
    a and b share an edge of P, or a + b - z lies in P."""
    polygon = tri.polygon
    report = Report(f"boundary triangle lemma on {polygon}")
    interior = polygon.interior_points
    for t in tri.sorted_triangles():
        inner = [v for v in t.vertices if v in interior]
        outer = [v for v in t.vertices if polygon.on_boundary(v) and not polygon.is_vertex(v)]
        if len(inner) != 1 or len(outer) != 2:
            continue
        (z,) = inner
        a, b = outer
        r = a + b - z
        holds = polygon.common_edge(a, b) or polygon.contains(r)
        report.add(str(t), holds, f"a={a} b={b} z={z} a+b-z={r}")
    return report


def check_structural_lemmas(tri: Triangulation, skeleton: Optional[Graph] = None) -> Report:
    """Shared-edge and split-line conclusions for every heavy and double heavy match realized by tri."""
    report = Report(f"heavy cycle lemmas on {tri.polygon}")
    skeleton = skeleton or skeletonize(tri).skeleton
    if isinstance(skeleton, Circle):
        return report
    matches = detect_heavy_cycle(skeleton) + detect_double_heavy(skeleton)
    if not matches:
        return report
    mapped = 0
    for match in matches:
        try:
            sub = validate_polygon_level(tri, skeleton, match, lemmas_only=True)
        except MatchDoesNotMapToTriangulation as e:
            logger.debug(f"{match.kind} match on {list(match.cycle)} not realized here: {e}")
            continue
        mapped += 1
        for check in sub.checks:
            report.add(f"{sub.title}: {check.name}", check.passed, check.detail)
    # a skeleton with heavy matches must have at least one on the triangulation it came from
    report.add("heavy matches map to the triangulation", mapped > 0, f"{mapped} of {len(matches)} matches mapped")
    if not mapped:
        logger.warning(f"None of {len(matches)} heavy matches map to {tri.polygon}")
    return report


def certificates(records: Iterable[CensusRecord], regular_only: bool = True) -> List[str]:
    return sorted({r.skeleton_certificate for r in records if r.regular or not regular_only})
