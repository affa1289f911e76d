"""
Genus ≤ 6 classifier.

Obstructions are tried in a fixed order so reports are reproducible:

    enve-loop, sprawling node, sprawling triangle (g >= 5), crowded,
    TIE-fighter, heavy cycle with two loops, heavy cycle with one loop,
    double heavy cycle with two loops (g = 6), cut-edge recursion.

When nothing fires the graph is troplanar, or Unknown when a catalog entry
it depends on is missing or pending and no witness settles it.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Union

from troplanar.catalog import Catalog, detect_catalog, load_catalog
from troplanar.corpus import Witness
from troplanar.errors import CatalogMissing, Disconnected, GenusOutOfRange
from troplanar.graphs import Circle, Graph, cut_edges, split_at_cut_edge
from troplanar.obstructions import (
    HeavyCycleMatch,
    Obstruction,
    ObstructionKind,
    detect_double_heavy,
    detect_heavy_cycle,
    detect_sprawling_node,
    detect_sprawling_triangle,
    double_heavy_two_loops_obstructed,
    heavy_one_loop_obstructed,
    heavy_two_loops_obstructed,
)

logger = logging.getLogger(__name__)

MAX_GENUS = 6


@dataclass(frozen=True)
class Troplanar:
    witness: Optional[Witness] = None

    @property
    def name(self) -> str:
        return "Troplanar"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"verdict": self.name}
        if self.witness is not None:
            out["witness"] = {
                "polygon": [list(v) for v in self.witness.polygon.vertices],
                "triangulation": self.witness.triangulation.serialize(),
                "source": self.witness.source,
            }
        return out


@dataclass(frozen=True)
class NotTroplanar:
    obstruction: Obstruction

    @property
    def name(self) -> str:
        return "NotTroplanar"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.name,
            "kind": self.obstruction.kind.value,
            "witness": dict(self.obstruction.witness),
        }


@dataclass(frozen=True)
class Unknown:
    reason: str

    @property
    def name(self) -> str:
        return "Unknown"

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.name, "reason": self.reason}


Verdict = Union[Troplanar, NotTroplanar, Unknown]
WitnessFinder = Callable[[Graph], Optional[Witness]]


def _default_finder() -> WitnessFinder:
    from troplanar.oracle import find_witness

    return find_witness


def obstructed_anchor(
    matches: List[HeavyCycleMatch],
    test: Callable[[HeavyCycleMatch], Optional[Obstruction]],
) -> Optional[Obstruction]:
    """An anchor is obstructed when every cycle matched at it is; the first such anchor wins."""
    groups: Dict[Any, List[HeavyCycleMatch]] = {}
    for m in matches:
        groups.setdefault(m.anchor, []).append(m)
    for anchor in sorted(groups):
        found = []
        for m in groups[anchor]:
            obstruction = test(m)
            if obstruction is None:
                break
            found.append(obstruction)
        else:
            return found[0]
    return None


class _Classifier:
    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.cache: Dict[str, Verdict] = {}
        self.missing: Optional[str] = None
        try:
            catalog.require()
        except CatalogMissing as e:
            self.missing = str(e)
            logger.warning(f"{e}; affected graphs will be reported as Unknown")

    def obstruction(self, g) -> Optional[Obstruction]:
        genus = g.genus
        checks: List[Callable[[], Optional[Obstruction]]] = [
            lambda: detect_catalog(g, self.catalog, (ObstructionKind.ENVE_LOOP_CATALOG,), require=False),
            lambda: detect_sprawling_node(g),
        ]
        if genus >= 5:
            checks.append(lambda: detect_sprawling_triangle(g))
        checks.append(lambda: detect_catalog(g, self.catalog, (ObstructionKind.CROWDED,), require=False))
        checks.append(lambda: detect_catalog(g, self.catalog, (ObstructionKind.TIE_FIGHTER,), require=False))

        heavy = detect_heavy_cycle(g)
        two = [m for m in heavy if m.kind == "two-loops"]
        one = [m for m in heavy if m.kind == "one-loop"]
        checks.append(lambda: obstructed_anchor(two, lambda m: heavy_two_loops_obstructed(g, m)))
        checks.append(lambda: obstructed_anchor(one, lambda m: heavy_one_loop_obstructed(g, m)))
        if genus == 6:
            checks.append(
                lambda: obstructed_anchor(detect_double_heavy(g), lambda m: double_heavy_two_loops_obstructed(g, m))
            )
        for check in checks:
            found = check()
            if found is not None:
                return found
        return None

    def unknown_reasons(self, g) -> List[str]:
        reasons = []
        if self.missing:
            reasons.append(self.missing)
        for entry in self.catalog.pending(g.genus):
            reasons.append(f"catalog entry '{entry.name}' is pending")
        return reasons

    def classify(self, g: Graph, finder: Optional[WitnessFinder]) -> Verdict:
        if g.genus > MAX_GENUS:
            raise GenusOutOfRange(f"genus {g.genus} is above {MAX_GENUS}", g)
        if not isinstance(g, Circle) and not g.is_connected:
            raise Disconnected(f"graph {g.certificate} is not connected", g)
        if finder is None and g.certificate in self.cache:
            return self.cache[g.certificate]

        verdict = self._decide(g, finder)
        if finder is None:
            self.cache[g.certificate] = verdict
        logger.debug(f"{g.certificate}: {verdict.name}")
        return verdict

    def _decide(self, g: Graph, finder: Optional[WitnessFinder]) -> Verdict:
        if isinstance(g, Circle) or g.genus == 2:
            return Troplanar(finder(g) if finder else None)

        found = self.obstruction(g)
        if found is not None:
            return NotTroplanar(found)

        reasons = self.unknown_reasons(g)
        for k in cut_edges(g):
            for piece in split_at_cut_edge(g, k):
                verdict = self.classify(piece.graph, None)
                if isinstance(verdict, NotTroplanar):
                    return NotTroplanar(
                        Obstruction(
                            ObstructionKind.CUT_EDGE_RECURSION,
                            {
                                "cut_edge": k,
                                "piece": piece.graph.certificate,
                                "piece_obstruction": verdict.obstruction.describe(),
                            },
                        )
                    )
                if isinstance(verdict, Unknown):
                    reasons.append(f"piece {piece.graph.certificate} at cut edge {k}: {verdict.reason}")

        witness = finder(g) if finder else None
        if witness is not None:
            return Troplanar(witness)
        if reasons:
            return Unknown("; ".join(dict.fromkeys(reasons)))
        return Troplanar(None)


def classify(
    g: Graph,
    catalog: Optional[Catalog] = None,
    search_witness: bool = True,
    finder: Optional[WitnessFinder] = None,
) -> Verdict:
    """Decide tropical planarity of a connected trivalent planar graph of genus at most 6.

    Pieces met during cut-edge recursion are decided without witness search.
    """
    catalog = catalog or load_catalog()
    if search_witness and finder is None:
        finder = _default_finder()
    return _Classifier(catalog).classify(g, finder if search_witness else None)
